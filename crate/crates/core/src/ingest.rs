//! Building example sets from plain word files and from XML corpora.
//!
//! In XML mode every element occurrence contributes one word to that element
//! name's sample: the sequence of its child element names. Text content is
//! ignored except for a mixed-content warning counter.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use quick_xml::events::Event;
use quick_xml::Reader;

use crate::alphabet::ExampleSet;
use crate::error::{Error, Result};

/// How a word file is tokenized.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WordMode {
    /// Each line is a word of whitespace-separated symbols.
    Tokens,
    /// Each character of a line is a symbol.
    Chars,
}

/// Reads one word per line; blank lines are empty words.
pub fn read_words(path: &Path, mode: WordMode) -> Result<ExampleSet> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    read_words_from(BufReader::new(file), mode).map_err(|err| match err {
        Error::Io { source, .. } => Error::Io {
            path: path.display().to_string(),
            source,
        },
        other => other,
    })
}

/// Reader-based variant of [`read_words`], used for standard input.
pub fn read_words_from<R: BufRead>(reader: R, mode: WordMode) -> Result<ExampleSet> {
    let mut words: Vec<Vec<String>> = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|source| Error::Io {
            path: "<input>".into(),
            source,
        })?;
        let word = match mode {
            WordMode::Tokens => line.split_whitespace().map(String::from).collect(),
            WordMode::Chars => line.chars().map(String::from).collect(),
        };
        words.push(word);
    }
    ExampleSet::from_words(words)
}

/// Per-element samples extracted from a corpus of XML documents.
#[derive(Debug)]
pub struct XmlCorpus {
    /// Element name -> sample of child-name sequences, in name order.
    pub elements: BTreeMap<String, ExampleSet>,
    /// Number of non-whitespace text nodes encountered between children.
    pub mixed_content_warnings: usize,
}

#[derive(Default)]
struct CorpusBuilder {
    words: BTreeMap<String, Vec<Vec<String>>>,
    mixed_content_warnings: usize,
}

impl CorpusBuilder {
    fn finish(self) -> Result<XmlCorpus> {
        let elements = self
            .words
            .into_iter()
            .map(|(name, words)| Ok((name, ExampleSet::from_words(words)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(XmlCorpus {
            elements,
            mixed_content_warnings: self.mixed_content_warnings,
        })
    }
}

/// Streams every document once and collects per-element child sequences.
/// Documents are processed in the given order, so the result is stable.
pub fn read_xml_corpus<P: AsRef<Path>>(paths: &[P]) -> Result<XmlCorpus> {
    let mut builder = CorpusBuilder::default();
    for path in paths {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        scan_document(
            Reader::from_reader(BufReader::new(file)),
            &path.display().to_string(),
            &mut builder,
        )?;
    }
    builder.finish()
}

/// In-memory variant of [`read_xml_corpus`].
pub fn read_xml_strings<S: AsRef<str>>(docs: &[S]) -> Result<XmlCorpus> {
    let mut builder = CorpusBuilder::default();
    for (i, doc) in docs.iter().enumerate() {
        scan_document(
            Reader::from_str(doc.as_ref()),
            &format!("<doc {i}>"),
            &mut builder,
        )?;
    }
    builder.finish()
}

fn scan_document<R: BufRead>(
    mut reader: Reader<R>,
    source_name: &str,
    builder: &mut CorpusBuilder,
) -> Result<()> {
    let xml_err = |reader: &Reader<R>, msg: String| Error::Xml {
        source_name: source_name.to_string(),
        position: reader.buffer_position(),
        msg,
    };
    let mut stack: Vec<(String, Vec<String>)> = Vec::new();
    let mut buf = Vec::new();
    loop {
        match reader.read_event_into(&mut buf) {
            Ok(Event::Start(start)) => {
                let name = element_name(&reader, source_name, start.name().as_ref())?;
                if let Some((_, children)) = stack.last_mut() {
                    children.push(name.clone());
                }
                stack.push((name, Vec::new()));
            }
            Ok(Event::Empty(empty)) => {
                let name = element_name(&reader, source_name, empty.name().as_ref())?;
                if let Some((_, children)) = stack.last_mut() {
                    children.push(name.clone());
                }
                builder.words.entry(name).or_default().push(Vec::new());
            }
            Ok(Event::End(_)) => {
                let (name, children) = stack
                    .pop()
                    .ok_or_else(|| xml_err(&reader, "unexpected closing tag".into()))?;
                builder.words.entry(name).or_default().push(children);
            }
            Ok(Event::Text(text)) => {
                if !stack.is_empty() && !text.iter().all(|b| b.is_ascii_whitespace()) {
                    builder.mixed_content_warnings += 1;
                }
            }
            Ok(Event::CData(_)) | Ok(Event::GeneralRef(_)) => {
                if !stack.is_empty() {
                    builder.mixed_content_warnings += 1;
                }
            }
            Ok(Event::Eof) => {
                if let Some((name, _)) = stack.last() {
                    return Err(xml_err(&reader, format!("unclosed element `{name}`")));
                }
                return Ok(());
            }
            Ok(_) => {}
            Err(err) => return Err(xml_err(&reader, err.to_string())),
        }
        buf.clear();
    }
}

fn element_name<R>(reader: &Reader<R>, source_name: &str, raw: &[u8]) -> Result<String> {
    std::str::from_utf8(raw)
        .map(str::to_string)
        .map_err(|_| Error::Xml {
            source_name: source_name.to_string(),
            position: reader.buffer_position(),
            msg: "element name is not valid UTF-8".into(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn char_mode_reads_the_worked_sample() {
        let e = read_words_from(Cursor::new("abcd\naadbc\nbdd"), WordMode::Chars).unwrap();
        let words: Vec<String> = (0..e.words().len())
            .map(|i| e.word_names(i).join(""))
            .collect();
        assert_eq!(words, ["abcd", "aadbc", "bdd"]);
    }

    #[test]
    fn empty_file_is_an_empty_sample() {
        assert!(matches!(
            read_words_from(Cursor::new(""), WordMode::Chars),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn token_mode_splits_on_whitespace() {
        let e = read_words_from(Cursor::new("g1.m1 g1.m2\ng2.m1"), WordMode::Tokens).unwrap();
        assert_eq!(e.words().len(), 2);
        assert_eq!(e.alphabet().len(), 3);
        assert_eq!(e.word_names(0), ["g1.m1", "g1.m2"]);
    }

    #[test]
    fn blank_lines_are_empty_words() {
        let e = read_words_from(Cursor::new("ab\n\ncd\n"), WordMode::Chars).unwrap();
        assert_eq!(e.words().len(), 3);
        assert!(e.words()[1].is_empty());
    }

    #[test]
    fn token_mode_rejects_reserved_characters() {
        assert!(matches!(
            read_words_from(Cursor::new("a b&c"), WordMode::Tokens),
            Err(Error::InvalidSymbol { .. })
        ));
    }

    #[test]
    fn xml_child_sequences_become_words() {
        let corpus = read_xml_strings(&[
            "<r><a/><b/></r>",
            "<r><b/><a/></r>",
        ])
        .unwrap();
        let r = &corpus.elements["r"];
        let words: Vec<String> = (0..r.words().len())
            .map(|i| r.word_names(i).join(""))
            .collect();
        assert_eq!(words, ["ab", "ba"]);
        // The leaves contribute empty words.
        assert!(corpus.elements["a"].alphabet().is_empty());
        assert_eq!(corpus.elements["a"].words().len(), 2);
    }

    #[test]
    fn childless_element_has_one_empty_word() {
        let corpus = read_xml_strings(&["<r/>"]).unwrap();
        let r = &corpus.elements["r"];
        assert_eq!(r.words().len(), 1);
        assert!(r.words()[0].is_empty());
    }

    #[test]
    fn mixed_content_is_counted_not_fatal() {
        let corpus = read_xml_strings(&["<r>hello<a/>world</r>"]).unwrap();
        assert_eq!(corpus.mixed_content_warnings, 2);
        assert_eq!(corpus.elements["r"].words().len(), 1);
    }

    #[test]
    fn attributes_and_nesting_are_handled() {
        let corpus = read_xml_strings(&[
            r#"<lib kind="x"><book id="1"><title/><author/><author/></book><book/></lib>"#,
        ])
        .unwrap();
        let lib = &corpus.elements["lib"];
        assert_eq!(lib.word_names(0), ["book", "book"]);
        let book = &corpus.elements["book"];
        assert_eq!(book.word_names(0), ["title", "author", "author"]);
        assert!(book.words()[1].is_empty());
    }

    #[test]
    fn malformed_xml_reports_a_position() {
        let err = read_xml_strings(&["<r><a></r>"]).unwrap_err();
        match err {
            Error::Xml { position, .. } => assert!(position > 0),
            other => panic!("expected xml error, got {other:?}"),
        }
        assert!(read_xml_strings(&["<r><a/>"]).is_err());
    }

    #[test]
    fn corpus_reading_is_order_stable() {
        let docs = ["<r><a/><b/></r>", "<r><c/></r>"];
        let one = read_xml_strings(&docs).unwrap();
        let two = read_xml_strings(&docs).unwrap();
        let words = |c: &XmlCorpus| -> Vec<String> {
            c.elements["r"]
                .words()
                .iter()
                .enumerate()
                .map(|(i, _)| c.elements["r"].word_names(i).join(""))
                .collect()
        };
        assert_eq!(words(&one), words(&two));
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let words_path = dir.path().join("sample.txt");
        std::fs::write(&words_path, "abcd\naadbc\nbdd\n").unwrap();
        let e = read_words(&words_path, WordMode::Chars).unwrap();
        assert_eq!(e.words().len(), 3);

        let xml_path = dir.path().join("doc.xml");
        std::fs::write(&xml_path, "<r><a/><b/></r>").unwrap();
        let corpus = read_xml_corpus(&[&xml_path]).unwrap();
        assert_eq!(corpus.elements["r"].word_names(0), ["a", "b"]);

        let missing = dir.path().join("missing.txt");
        assert!(matches!(
            read_words(&missing, WordMode::Chars),
            Err(Error::Io { .. })
        ));
    }
}
