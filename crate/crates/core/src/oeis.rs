//! OEIS b-file client with a local cache.
//!
//! Offline-first: everything that must be deterministic runs against bundled
//! fixtures, and the live client only fires when explicitly asked to. Cached
//! sequences live one JSON file per id in a configurable directory and are
//! considered fresh for a TTL (default 30 days; OEIS data is near-immutable).
//! Cache writes go through a temp file and rename.

use std::path::PathBuf;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::series::Series;
use crate::verify::{Convention, VerificationReport};
use crate::{Int, Rat};

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "COMPOSITA_CACHE_DIR";

/// Default freshness window for cached sequences.
pub const DEFAULT_TTL: Duration = Duration::from_secs(30 * 24 * 60 * 60);

const DEFAULT_BASE_URL: &str = "https://oeis.org";

/// A validated OEIS identifier: `A` followed by six digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceId(String);

impl SequenceId {
    pub fn parse(s: &str) -> Result<Self, Error> {
        let bytes = s.as_bytes();
        let valid = bytes.len() == 7
            && bytes[0] == b'A'
            && bytes[1..].iter().all(|b| b.is_ascii_digit());
        if valid {
            Ok(SequenceId(s.to_string()))
        } else {
            Err(Error::InvalidSequenceId(s.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Path of the per-sequence b-file on the OEIS server.
    pub fn b_file_path(&self) -> String {
        format!("{}/b{}.txt", self.0, &self.0[1..])
    }
}

impl std::fmt::Display for SequenceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Serde adapter: big integers as decimal strings (they overflow JSON
/// numbers).
mod int_strings {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::Int;

    pub fn serialize<S: Serializer>(terms: &[Int], serializer: S) -> Result<S::Ok, S::Error> {
        terms
            .iter()
            .map(Int::to_string)
            .collect::<Vec<_>>()
            .serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Int>, D::Error> {
        Vec::<String>::deserialize(deserializer)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A fetched (or cached) integer sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CachedSequence {
    pub id: String,
    /// Index of the first term in the b-file (OEIS offsets vary).
    pub first_index: i64,
    /// Terms in b-file order.
    #[serde(with = "int_strings")]
    pub terms: Vec<Int>,
    /// Unix seconds at fetch time.
    pub fetched_at: u64,
    /// Where the data came from: a URL or a cache-file path.
    pub source: String,
}

impl CachedSequence {
    pub fn term(&self, i: usize) -> Option<&Int> {
        self.terms.get(i)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Parse b-file text: one `index term` pair per line, `#` comments and blank
/// lines ignored. Indices must be consecutive.
pub fn parse_b_file(text: &str) -> Result<(i64, Vec<Int>), Error> {
    let mut first_index = None;
    let mut next_index = 0i64;
    let mut terms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let idx: i64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::BFileParse(format!("line {}: bad index", lineno + 1)))?;
        let term: Int = parts
            .next()
            .ok_or_else(|| Error::BFileParse(format!("line {}: missing term", lineno + 1)))?
            .parse()
            .map_err(|_| Error::BFileParse(format!("line {}: bad term", lineno + 1)))?;
        match first_index {
            None => {
                first_index = Some(idx);
                next_index = idx + 1;
            }
            Some(_) => {
                if idx != next_index {
                    return Err(Error::BFileParse(format!(
                        "line {}: index {idx} is not consecutive (expected {next_index})",
                        lineno + 1
                    )));
                }
                next_index += 1;
            }
        }
        terms.push(term);
    }
    match first_index {
        Some(first) => Ok((first, terms)),
        None => Err(Error::BFileParse("no terms found".into())),
    }
}

/// Provider of raw b-file text; swapped out in tests.
pub trait SequenceSource {
    fn get(&self, id: &SequenceId) -> Result<String, Error>;
    /// Human-readable origin recorded in the cache entry.
    fn describe(&self, id: &SequenceId) -> String;
}

/// Live HTTP source against oeis.org (or a mirror).
pub struct HttpSource {
    pub base_url: String,
}

impl Default for HttpSource {
    fn default() -> Self {
        HttpSource {
            base_url: DEFAULT_BASE_URL.to_string(),
        }
    }
}

impl SequenceSource for HttpSource {
    fn get(&self, id: &SequenceId) -> Result<String, Error> {
        let url = self.describe(id);
        let net = |reason: String| Error::Network {
            id: id.to_string(),
            reason,
        };
        let response = reqwest::blocking::get(&url).map_err(|e| net(e.to_string()))?;
        if !response.status().is_success() {
            return Err(net(format!("HTTP {}", response.status())));
        }
        response.text().map_err(|e| net(e.to_string()))
    }

    fn describe(&self, id: &SequenceId) -> String {
        format!("{}/{}", self.base_url, id.b_file_path())
    }
}

/// Cache-aware fetcher.
pub struct OeisClient<S = HttpSource> {
    source: S,
    cache_dir: PathBuf,
    ttl: Duration,
    offline: bool,
}

impl OeisClient<HttpSource> {
    /// Client against the live OEIS with the given cache directory.
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        OeisClient::with_source(HttpSource::default(), cache_dir)
    }
}

impl<S: SequenceSource> OeisClient<S> {
    pub fn with_source(source: S, cache_dir: impl Into<PathBuf>) -> Self {
        OeisClient {
            source,
            cache_dir: cache_dir.into(),
            ttl: DEFAULT_TTL,
            offline: false,
        }
    }

    pub fn offline(mut self, offline: bool) -> Self {
        self.offline = offline;
        self
    }

    pub fn ttl(mut self, ttl: Duration) -> Self {
        self.ttl = ttl;
        self
    }

    fn cache_path(&self, id: &SequenceId) -> PathBuf {
        self.cache_dir.join(format!("{id}.json"))
    }

    fn load_cache(&self, id: &SequenceId) -> Option<CachedSequence> {
        let path = self.cache_path(id);
        let text = std::fs::read_to_string(&path).ok()?;
        let mut cached: CachedSequence = serde_json::from_str(&text).ok()?;
        cached.source = path.display().to_string();
        Some(cached)
    }

    fn store_cache(&self, id: &SequenceId, sequence: &CachedSequence) -> Result<(), Error> {
        std::fs::create_dir_all(&self.cache_dir)?;
        let path = self.cache_path(id);
        let tmp = self.cache_dir.join(format!(".{id}.json.tmp"));
        std::fs::write(&tmp, serde_json::to_string_pretty(sequence)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }

    fn is_fresh(&self, cached: &CachedSequence) -> bool {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .unwrap_or_default()
            .as_secs();
        // strict: a zero TTL disables the cache entirely
        now.saturating_sub(cached.fetched_at) < self.ttl.as_secs()
    }

    /// Fetch a sequence: serve fresh cache entries, otherwise hit the source
    /// and cache the result. Network failures fall back to a stale cache
    /// when one exists.
    pub fn fetch_sequence(&self, id: &str) -> Result<CachedSequence, Error> {
        let id = SequenceId::parse(id)?;
        let cached = self.load_cache(&id);
        if let Some(cached) = &cached {
            if self.offline || self.is_fresh(cached) {
                return Ok(cached.clone());
            }
        }
        if self.offline {
            return Err(Error::OfflineCacheMiss(id.to_string()));
        }
        let text = match self.source.get(&id) {
            Ok(text) => text,
            Err(err) => {
                // stale cache beats no data
                return cached.ok_or(err);
            }
        };
        let (first_index, terms) = parse_b_file(&text)?;
        let sequence = CachedSequence {
            id: id.to_string(),
            first_index,
            terms,
            fetched_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .unwrap_or_default()
                .as_secs(),
            source: self.source.describe(&id),
        };
        self.store_cache(&id, &sequence)?;
        Ok(sequence)
    }
}

/// Compare a solution series against a cached sequence under a coefficient
/// convention. Terms align with orders from `n = 1`; the report covers
/// exactly `min(terms available, a.order)` entries.
pub fn compare_with_sequence(
    a: &Series<Rat>,
    seq: &CachedSequence,
    convention: &Convention,
) -> Result<VerificationReport, Error> {
    let len = seq.len().min(a.order());
    let mut triples = Vec::with_capacity(len);
    for n in 1..=len {
        let expected = Rat::from_integer(seq.term(n - 1).expect("n <= len").clone());
        let actual = Rat::from_integer(convention.integer_term(n, a.coeff(n))?);
        triples.push((n, expected, actual));
    }
    Ok(VerificationReport::from_triples(
        format!("{} vs {:?} coefficients", seq.id, convention),
        triples,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::RefCell;
    use std::collections::HashMap;

    struct MapSource {
        data: HashMap<String, String>,
        calls: RefCell<usize>,
    }

    impl MapSource {
        fn new(entries: &[(&str, &str)]) -> Self {
            MapSource {
                data: entries
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect(),
                calls: RefCell::new(0),
            }
        }
    }

    impl SequenceSource for MapSource {
        fn get(&self, id: &SequenceId) -> Result<String, Error> {
            *self.calls.borrow_mut() += 1;
            self.data
                .get(id.as_str())
                .cloned()
                .ok_or_else(|| Error::Network {
                    id: id.to_string(),
                    reason: "not in map".into(),
                })
        }

        fn describe(&self, id: &SequenceId) -> String {
            format!("map:{id}")
        }
    }

    const B141119: &str = "# half-iterate example\n1 1\n2 4\n3 -48\n4 960\n";

    #[test]
    fn id_validation_precedes_any_fetch() {
        let dir = tempfile::tempdir().unwrap();
        let client = OeisClient::with_source(MapSource::new(&[]), dir.path());
        assert!(matches!(
            client.fetch_sequence("X123"),
            Err(Error::InvalidSequenceId(_))
        ));
        assert!(matches!(
            client.fetch_sequence("A12345"),
            Err(Error::InvalidSequenceId(_))
        ));
        assert_eq!(*client.source.calls.borrow(), 0);
    }

    fn ints(values: &[i64]) -> Vec<Int> {
        values.iter().map(|&v| Int::from(v)).collect()
    }

    #[test]
    fn b_file_parsing() {
        let (first, terms) = parse_b_file(B141119).unwrap();
        assert_eq!(first, 1);
        assert_eq!(terms, ints(&[1, 4, -48, 960]));

        assert!(matches!(parse_b_file(""), Err(Error::BFileParse(_))));
        assert!(matches!(
            parse_b_file("1 1\n3 5\n"),
            Err(Error::BFileParse(_))
        ));
        assert!(matches!(
            parse_b_file("1 x\n"),
            Err(Error::BFileParse(_))
        ));
        // offsets other than 1 are preserved
        let (first, terms) = parse_b_file("0 1\n1 1\n2 2\n").unwrap();
        assert_eq!(first, 0);
        assert_eq!(terms.len(), 3);
    }

    #[test]
    fn cache_round_trip_and_offline() {
        let dir = tempfile::tempdir().unwrap();
        let client = OeisClient::with_source(MapSource::new(&[("A141119", B141119)]), dir.path());
        let fetched = client.fetch_sequence("A141119").unwrap();
        assert_eq!(fetched.terms, ints(&[1, 4, -48, 960]));
        assert_eq!(fetched.source, "map:A141119");
        assert_eq!(*client.source.calls.borrow(), 1);

        // offline client with a warm cache serves from disk
        let offline = OeisClient::with_source(MapSource::new(&[]), dir.path()).offline(true);
        let cached = offline.fetch_sequence("A141119").unwrap();
        assert_eq!(cached.terms, fetched.terms);
        assert!(cached.source.ends_with("A141119.json"));
        assert_eq!(*offline.source.calls.borrow(), 0);

        // offline without a cache errors
        assert!(matches!(
            offline.fetch_sequence("A000001"),
            Err(Error::OfflineCacheMiss(_))
        ));
    }

    #[test]
    fn stale_cache_is_refreshed_and_survives_network_failure() {
        let dir = tempfile::tempdir().unwrap();
        let client = OeisClient::with_source(MapSource::new(&[("A141119", B141119)]), dir.path())
            .ttl(Duration::from_secs(0));
        client.fetch_sequence("A141119").unwrap();
        client.fetch_sequence("A141119").unwrap();
        // ttl 0 means the second call re-fetches
        assert_eq!(*client.source.calls.borrow(), 2);

        // with the source gone, the stale cache is still served
        let broken = OeisClient::with_source(MapSource::new(&[]), dir.path())
            .ttl(Duration::from_secs(0));
        let seq = broken.fetch_sequence("A141119").unwrap();
        assert_eq!(seq.terms.len(), 4);
    }

    #[test]
    fn comparison_against_sequence_terms() {
        fn rat(n: i64, d: i64) -> Rat {
            Rat::new(Int::from(n), Int::from(d))
        }
        let seq = CachedSequence {
            id: "A141119".into(),
            first_index: 1,
            terms: ints(&[1, 4, -48]),
            fetched_at: 0,
            source: "test".into(),
        };
        let a = Series::from_coeffs(vec![rat(1, 1), rat(4, 1), rat(-48, 1), rat(960, 1)]);
        let report = compare_with_sequence(&a, &seq, &Convention::Ordinary).unwrap();
        assert!(report.pass);
        // report length is min(terms, order)
        assert_eq!(report.per_order.len(), 3);

        let x = Series::<Rat>::identity(3);
        let wrong = CachedSequence {
            terms: ints(&[2, 0, 0]),
            ..seq.clone()
        };
        let report = compare_with_sequence(&x, &wrong, &Convention::Ordinary).unwrap();
        assert!(!report.pass);
        assert!(!report.per_order[0].matches);

        // fractional coefficient under an integer convention
        let frac = Series::from_coeffs(vec![rat(1, 1), rat(1, 2), rat(0, 1)]);
        assert!(matches!(
            compare_with_sequence(&frac, &seq, &Convention::Ordinary),
            Err(Error::ConventionMismatch { n: 2, .. })
        ));
    }
}
