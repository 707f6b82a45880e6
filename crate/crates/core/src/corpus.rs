//! The built-in corpus of small instances, shipped as data files and
//! embedded here. Expected class counts were produced by the brute-force
//! oracle and are frozen in the files.

use crate::error::Result;
use crate::instance::InstanceFile;

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub json: &'static str,
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "single-edge-trivial",
        json: include_str!("../corpus/single-edge-trivial.json"),
    },
    CorpusEntry {
        name: "single-edge-z3-s3",
        json: include_str!("../corpus/single-edge-z3-s3.json"),
    },
    CorpusEntry {
        name: "path2-z2-z4",
        json: include_str!("../corpus/path2-z2-z4.json"),
    },
    CorpusEntry {
        name: "path2-v4-d8",
        json: include_str!("../corpus/path2-v4-d8.json"),
    },
    CorpusEntry {
        name: "double-loop-z3-s3-free",
        json: include_str!("../corpus/double-loop-z3-s3-free.json"),
    },
    CorpusEntry {
        name: "goldschmidt-z2-z4",
        json: include_str!("../corpus/goldschmidt-z2-z4.json"),
    },
    CorpusEntry {
        name: "goldschmidt-z3-s3",
        json: include_str!("../corpus/goldschmidt-z3-s3.json"),
    },
    CorpusEntry {
        name: "goldschmidt-v4-d8",
        json: include_str!("../corpus/goldschmidt-v4-d8.json"),
    },
    CorpusEntry {
        name: "goldschmidt-z4-q8",
        json: include_str!("../corpus/goldschmidt-z4-q8.json"),
    },
    CorpusEntry {
        name: "triangle-trivial",
        json: include_str!("../corpus/triangle-trivial.json"),
    },
    CorpusEntry {
        name: "triangle-z3",
        json: include_str!("../corpus/triangle-z3.json"),
    },
    CorpusEntry {
        name: "triangle-z3-s3",
        json: include_str!("../corpus/triangle-z3-s3.json"),
    },
];

pub fn find(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

pub fn parse(entry: &CorpusEntry) -> Result<InstanceFile> {
    InstanceFile::parse(entry.json)
}
