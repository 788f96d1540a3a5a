//! Classification records and their JSON-lines store.
//!
//! A store file starts with one header line carrying the schema version and
//! the run configuration, followed by one record per line.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arrangement::{canonical_form, Triangle, TriangleArrangement};
use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, RationalVector};
use crate::liealg::g_basis;
use crate::poly::cubic_of;
use crate::prehomog::{
    coordinate_invariants, is_dual_prehomogeneous, is_prehomogeneous, rank_at, RankConfig, RankMode, Verdict,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub schema: u32,
    /// Canonical-form key; equal for isomorphic arrangements.
    pub key: String,
    pub n: usize,
    /// The arrangement as analyzed; the witness refers to these labels.
    pub triangles: Vec<Triangle>,
    pub triangle_count: usize,
    pub black_circles: usize,
    pub dim_g: usize,
    pub pv: Verdict,
    pub error_bound: Option<String>,
    pub dual_pv: Option<Verdict>,
    pub coordinate_invariants: Vec<usize>,
    pub witness: Option<Vec<String>>,
    pub source: String,
}

impl ClassificationRecord {
    /// Computes `g[p]`, both rank verdicts and the coordinate invariants.
    pub fn analyze(a: &TriangleArrangement, cfg: &RankConfig, source: impl Into<String>) -> Result<Self> {
        let key = canonical_form(a)?.key();
        let g = g_basis(&cubic_of(a))?;
        let v = is_prehomogeneous(&g, cfg)?;
        let d = is_dual_prehomogeneous(&g, cfg)?;
        Ok(ClassificationRecord {
            schema: SCHEMA_VERSION,
            key,
            n: a.n(),
            triangles: a.triangles().to_vec(),
            triangle_count: a.triangle_count(),
            black_circles: a.black_circles().len(),
            dim_g: g.dim(),
            pv: v.verdict,
            error_bound: v.error_bound_text(),
            dual_pv: Some(d.verdict),
            coordinate_invariants: coordinate_invariants(&g),
            witness: v.witness.as_ref().map(|w| w.iter().map(format_rational).collect()),
            source: source.into(),
        })
    }

    pub fn arrangement(&self) -> Result<TriangleArrangement> {
        TriangleArrangement::new(self.n, self.triangles.iter().copied())
    }

    pub fn is_pv(&self) -> bool {
        self.pv.is_pv()
    }

    /// Checks the structural fields and, for a PV record, that the stored
    /// witness still reaches full rank.
    pub fn recheck(&self) -> Result<bool> {
        let a = self.arrangement()?;
        if a.triangle_count() != self.triangle_count || a.black_circles().len() != self.black_circles {
            return Ok(false);
        }
        if self.dim_g == 0 {
            return Ok(false);
        }
        if !self.is_pv() {
            return Ok(true);
        }
        let Some(w) = &self.witness else {
            return Ok(false);
        };
        let x = RationalVector(w.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?);
        if x.len() != self.n {
            return Ok(false);
        }
        let g = g_basis(&cubic_of(&a))?;
        Ok(g.dim() == self.dim_g && rank_at(&g, &x)? == self.n)
    }
}

/// First line of a store file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreHeader {
    pub schema: u32,
    pub seed: u64,
    pub samples: usize,
    pub coord_bound: u64,
    pub mode: RankMode,
    pub note: String,
}

impl StoreHeader {
    pub fn new(cfg: &RankConfig, note: impl Into<String>) -> Self {
        StoreHeader {
            schema: SCHEMA_VERSION,
            seed: cfg.seed,
            samples: cfg.samples,
            coord_bound: cfg.coord_bound,
            mode: cfg.mode,
            note: note.into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HeaderLine {
    header: StoreHeader,
}

fn schema_of(v: &serde_json::Value) -> Option<u32> {
    v.get("schema")
        .or_else(|| v.get("header").and_then(|h| h.get("schema")))
        .and_then(serde_json::Value::as_u64)
        .map(|s| s as u32)
}

fn check_schema(v: &serde_json::Value, line: usize) -> Result<()> {
    match schema_of(v) {
        Some(SCHEMA_VERSION) => Ok(()),
        Some(found) => Err(Error::SchemaMismatch {
            expected: SCHEMA_VERSION,
            found,
        }),
        None => Err(Error::CorruptRecord(format!("line {line}: missing schema"))),
    }
}

/// Serializes a store to JSON-lines text.
pub fn to_jsonl(header: &StoreHeader, records: &[ClassificationRecord]) -> String {
    let mut out = serde_json::to_string(&HeaderLine { header: header.clone() }).expect("header serializes");
    out.push('\n');
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

/// Parses JSON-lines text without rechecking witnesses.
pub fn from_jsonl(text: &str) -> Result<(StoreHeader, Vec<ClassificationRecord>)> {
    parse_lines(text.lines().map(|l| Ok(l.to_owned())))
}

fn parse_lines(lines: impl Iterator<Item = Result<String>>) -> Result<(StoreHeader, Vec<ClassificationRecord>)> {
    let mut header = None;
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let no = i + 1;
        let v: serde_json::Value =
            serde_json::from_str(&line).map_err(|e| Error::CorruptRecord(format!("line {no}: {e}")))?;
        check_schema(&v, no)?;
        if header.is_none() {
            let h: HeaderLine =
                serde_json::from_value(v).map_err(|e| Error::CorruptRecord(format!("line {no}: {e}")))?;
            header = Some(h.header);
        } else {
            let r: ClassificationRecord =
                serde_json::from_value(v).map_err(|e| Error::CorruptRecord(format!("line {no}: {e}")))?;
            records.push(r);
        }
    }
    let header = header.ok_or_else(|| Error::CorruptRecord("missing header line".into()))?;
    Ok((header, records))
}

/// Writes a fresh store, replacing any existing file.
pub fn write_store(path: &Path, header: &StoreHeader, records: &[ClassificationRecord]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(to_jsonl(header, records).as_bytes())?;
    w.flush()?;
    Ok(())
}

/// Appends one record to an existing store.
pub fn append_record(path: &Path, record: &ClassificationRecord) -> Result<()> {
    let mut f = OpenOptions::new().append(true).open(path)?;
    writeln!(f, "{}", serde_json::to_string(record)?)?;
    Ok(())
}

/// Loads a store without rechecking witnesses.
pub fn load_store_unchecked(path: &Path) -> Result<(StoreHeader, Vec<ClassificationRecord>)> {
    let r = BufReader::new(File::open(path)?);
    parse_lines(r.lines().map(|l| l.map_err(Error::from)))
}

/// Loads a store and rechecks every record.
pub fn load_store(path: &Path) -> Result<(StoreHeader, Vec<ClassificationRecord>)> {
    let (h, records) = load_store_unchecked(path)?;
    for r in &records {
        if !r.recheck()? {
            return Err(Error::CorruptRecord(format!("record {} fails its recheck", r.key)));
        }
    }
    Ok((h, records))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "change", rename_all = "snake_case")]
pub enum RecordChange {
    Added { key: String },
    Removed { key: String },
    Changed {
        key: String,
        field: &'static str,
        before: String,
        after: String,
    },
}

fn by_key(records: &[ClassificationRecord]) -> BTreeMap<&str, &ClassificationRecord> {
    let mut m = BTreeMap::new();
    for r in records {
        m.entry(r.key.as_str()).or_insert(r);
    }
    m
}

/// Dimension and verdict changes between two sets of records. Witnesses,
/// error bounds and sources are ignored.
pub fn diff(baseline: &[ClassificationRecord], current: &[ClassificationRecord]) -> Vec<RecordChange> {
    let (b, c) = (by_key(baseline), by_key(current));
    let mut out = Vec::new();
    for (k, old) in &b {
        let Some(new) = c.get(k) else {
            out.push(RecordChange::Removed { key: k.to_string() });
            continue;
        };
        let mut field = |name: &'static str, before: String, after: String| {
            if before != after {
                out.push(RecordChange::Changed {
                    key: k.to_string(),
                    field: name,
                    before,
                    after,
                });
            }
        };
        field("dim_g", old.dim_g.to_string(), new.dim_g.to_string());
        field("pv", format!("{:?}", old.pv), format!("{:?}", new.pv));
        field("dual_pv", format!("{:?}", old.dual_pv), format!("{:?}", new.dual_pv));
        field(
            "coordinate_invariants",
            format!("{:?}", old.coordinate_invariants),
            format!("{:?}", new.coordinate_invariants),
        );
    }
    for k in c.keys() {
        if !b.contains_key(k) {
            out.push(RecordChange::Added { key: k.to_string() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> TriangleArrangement {
        TriangleArrangement::new(7, [[1, 4, 5], [2, 5, 6], [3, 6, 7]]).unwrap()
    }

    fn store(seed: u64) -> (StoreHeader, Vec<ClassificationRecord>) {
        let cfg = RankConfig::with_seed(seed);
        let two = TriangleArrangement::new(6, [[1, 2, 3], [4, 5, 6]]).unwrap();
        let recs = vec![
            ClassificationRecord::analyze(&chain3(), &cfg, "chain:3").unwrap(),
            ClassificationRecord::analyze(&two, &cfg, "union").unwrap(),
        ];
        (StoreHeader::new(&cfg, "test"), recs)
    }

    #[test]
    fn analyze_fields() {
        let (_, recs) = store(1);
        let r = &recs[0];
        assert_eq!((r.n, r.dim_g, r.triangle_count, r.black_circles), (7, 9, 3, 0));
        assert!(r.is_pv());
        assert_eq!(r.coordinate_invariants, vec![5, 6]);
        assert!(r.recheck().unwrap());
        assert_eq!(recs[1].pv, Verdict::NotPv);
        assert!(recs[1].witness.is_none());
        assert!(recs[1].recheck().unwrap());
    }

    #[test]
    fn store_round_trip_and_append() {
        let (h, recs) = store(2);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        write_store(&path, &h, &recs[..1]).unwrap();
        append_record(&path, &recs[1]).unwrap();
        let (h2, back) = load_store(&path).unwrap();
        assert_eq!(h2, h);
        assert_eq!(back, recs);
    }

    #[test]
    fn schema_and_corruption_errors() {
        let (h, recs) = store(3);
        let text = to_jsonl(&h, &recs);
        let bumped = text.replacen("\"schema\":1", "\"schema\":9", 1);
        assert!(matches!(
            from_jsonl(&bumped),
            Err(Error::SchemaMismatch { expected: 1, found: 9 })
        ));
        let broken = format!("{text}{{not json\n");
        assert!(matches!(from_jsonl(&broken), Err(Error::CorruptRecord(_))));
        assert!(matches!(from_jsonl(""), Err(Error::CorruptRecord(_))));

        let mut bad = recs[0].clone();
        bad.witness = Some(vec!["0".into(); 7]);
        assert!(!bad.recheck().unwrap());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        write_store(&path, &h, &[bad]).unwrap();
        assert!(matches!(load_store(&path), Err(Error::CorruptRecord(_))));
        assert!(load_store_unchecked(&path).is_ok());
    }

    #[test]
    fn diff_ignores_seed() {
        let (_, a) = store(4);
        let (_, b) = store(5);
        assert_ne!(a[0].witness, b[0].witness);
        assert!(diff(&a, &a).is_empty());
        assert!(diff(&a, &b).is_empty());

        let mut c = b.clone();
        c[0].dim_g += 1;
        c.pop();
        let d = diff(&a, &c);
        assert_eq!(d.len(), 2);
        assert!(d.iter().any(|x| matches!(x, RecordChange::Changed { field: "dim_g", .. })));
        assert!(d.iter().any(|x| matches!(x, RecordChange::Removed { .. })));
        assert_eq!(diff(&c, &a).iter().filter(|x| matches!(x, RecordChange::Added { .. })).count(), 1);
    }
}
