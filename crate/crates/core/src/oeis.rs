//! OEIS sequence terms: b-file parsing, cache/fixture lookup, and offset
//! alignment against computed coefficient sequences.

use std::fs;
use std::path::PathBuf;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Where the terms of a sequence came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceSource {
    Network,
    Fixture,
}

#[derive(Debug, Clone)]
pub struct OeisSequence {
    /// "A" followed by six digits.
    pub id: String,
    /// Index of the first term in the b-file.
    pub offset: i64,
    pub terms: Vec<BigInt>,
    pub source: SequenceSource,
}

/// Bundled b-file snapshots so the full verification suite runs with no
/// network.
const FIXTURES: &[(&str, &str)] = &[
    ("A000108", include_str!("../fixtures/A000108.txt")),
    ("A002054", include_str!("../fixtures/A002054.txt")),
    ("A098156", include_str!("../fixtures/A098156.txt")),
    ("A134465", include_str!("../fixtures/A134465.txt")),
    ("A116914", include_str!("../fixtures/A116914.txt")),
    ("A072547", include_str!("../fixtures/A072547.txt")),
    ("A127531", include_str!("../fixtures/A127531.txt")),
];

pub fn validate_id(id: &str) -> Result<()> {
    let ok = id.len() == 7
        && id.starts_with('A')
        && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "{id:?} is not an OEIS id of the form A followed by six digits"
        )))
    }
}

/// Parses the b-file wire format: one "index value" pair per line, with
/// "#"-prefixed comment lines and blank lines ignored.
pub fn parse_b_file(text: &str) -> Result<Vec<(i64, BigInt)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let missing = || Error::Parse {
            line: lineno + 1,
            msg: "expected \"index value\"".into(),
        };
        let mut fields = line.split_whitespace();
        let index: i64 = fields
            .next()
            .ok_or_else(missing)?
            .parse()
            .map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad index: {e}"),
            })?;
        let value: BigInt = fields
            .next()
            .ok_or_else(missing)?
            .parse()
            .map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad value: {e}"),
            })?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: "trailing fields".into(),
            });
        }
        out.push((index, value));
    }
    Ok(out)
}

fn sequence_from_b_file(id: &str, text: &str, source: SequenceSource) -> Result<OeisSequence> {
    let pairs = parse_b_file(text)?;
    if pairs.is_empty() {
        return Err(Error::Unavailable(format!("{id}: b-file has no terms")));
    }
    Ok(OeisSequence {
        id: id.to_string(),
        offset: pairs[0].0,
        terms: pairs.into_iter().map(|(_, v)| v).collect(),
        source,
    })
}

/// Fetches raw b-file text; the HTTP implementation lives in the CLI so the
/// core stays network-free.
pub trait Transport {
    fn get_b_file(&self, id: &str) -> Result<String>;
}

/// Cache directory: OEIS_CACHE_DIR if set, otherwise data/oeis in the
/// working directory.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("OEIS_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data").join("oeis"))
}

pub struct OeisClient<'a> {
    cache_dir: PathBuf,
    offline: bool,
    transport: Option<&'a dyn Transport>,
}

impl<'a> OeisClient<'a> {
    pub fn new(cache_dir: PathBuf, offline: bool, transport: Option<&'a dyn Transport>) -> Self {
        Self {
            cache_dir,
            offline,
            transport,
        }
    }

    /// Fixture-only client; never touches the cache or the network.
    pub fn offline_fixtures() -> Self {
        Self {
            cache_dir: PathBuf::new(),
            offline: true,
            transport: None,
        }
    }

    fn cache_path(&self, id: &str) -> PathBuf {
        self.cache_dir.join(format!("{id}.txt"))
    }

    fn fixture(id: &str) -> Option<&'static str> {
        FIXTURES.iter().find(|(f, _)| *f == id).map(|(_, text)| *text)
    }

    /// Resolution order: local cache, then network (unless offline), then
    /// bundled fixture.
    pub fn fetch_sequence(&self, id: &str) -> Result<OeisSequence> {
        validate_id(id)?;
        let cache_path = self.cache_path(id);
        if cache_path.is_file() {
            let text = fs::read_to_string(&cache_path)?;
            return sequence_from_b_file(id, &text, SequenceSource::Network);
        }
        if !self.offline {
            if let Some(transport) = self.transport {
                if let Ok(text) = transport.get_b_file(id) {
                    let seq = sequence_from_b_file(id, &text, SequenceSource::Network)?;
                    // cache verbatim; identical content makes last-writer-wins fine
                    let _ = fs::create_dir_all(&self.cache_dir)
                        .and_then(|_| fs::write(&cache_path, &text));
                    return Ok(seq);
                }
            }
        }
        if let Some(text) = Self::fixture(id) {
            return sequence_from_b_file(id, text, SequenceSource::Fixture);
        }
        Err(Error::Unavailable(format!(
            "{id}: no cached copy, no network, and no bundled fixture"
        )))
    }
}

/// Convenience wrapper over the bundled fixtures.
pub fn fixture_sequence(id: &str) -> Result<OeisSequence> {
    OeisClient::offline_fixtures().fetch_sequence(id)
}

#[derive(Debug, Clone)]
pub struct AlignReport {
    pub pass: bool,
    /// The matched shift d with computed[i] = terms[i + d].
    pub shift: Option<i64>,
    /// Number of overlapping positions compared at the reported shift.
    pub overlap: usize,
    pub detail: String,
}

const MAX_SHIFT: i64 = 5;

/// Searches shifts |d| <= 5 with computed[i] = terms[i + d] on the whole
/// overlap, overlap >= min_overlap. PASS with the matching shift, or FAIL
/// with the best near-miss.
pub fn align_and_compare(
    computed: &[BigInt],
    sequence: &OeisSequence,
    min_overlap: usize,
) -> Result<AlignReport> {
    if computed.is_empty() {
        return Err(Error::Parameter("computed sequence is empty".into()));
    }
    if min_overlap < 4 {
        return Err(Error::Parameter("min_overlap must be >= 4".into()));
    }
    let terms = &sequence.terms;
    let mut matches: Vec<(i64, usize)> = Vec::new();
    let mut best_miss: Option<(i64, usize, usize)> = None; // (d, agreed, overlap)
    for d in -MAX_SHIFT..=MAX_SHIFT {
        let mut overlap = 0usize;
        let mut agreed = 0usize;
        for (i, value) in computed.iter().enumerate() {
            let j = i as i64 + d;
            if j < 0 || j as usize >= terms.len() {
                continue;
            }
            overlap += 1;
            if *value == terms[j as usize] {
                agreed += 1;
            }
        }
        if overlap >= min_overlap && agreed == overlap {
            matches.push((d, overlap));
        } else if best_miss.map_or(true, |(_, a, _)| agreed > a) {
            best_miss = Some((d, agreed, overlap));
        }
    }
    if !matches.is_empty() {
        // prefer the smallest displacement when several shifts match
        matches.sort_by_key(|&(d, _)| (d.abs(), d));
        let (d, overlap) = matches[0];
        let ambiguous = if matches.len() > 1 {
            format!(" ({} shifts match)", matches.len())
        } else {
            String::new()
        };
        return Ok(AlignReport {
            pass: true,
            shift: Some(d),
            overlap,
            detail: format!(
                "PASS {}: shift {d}, {overlap} terms agree{ambiguous}",
                sequence.id
            ),
        });
    }
    let detail = match best_miss {
        Some((d, agreed, overlap)) => format!(
            "FAIL {}: best shift {d} agrees on {agreed}/{overlap} terms",
            sequence.id
        ),
        None => format!("FAIL {}: no shift gives enough overlap", sequence.id),
    };
    Ok(AlignReport {
        pass: false,
        shift: None,
        overlap: 0,
        detail,
    })
}
