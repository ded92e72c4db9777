//! On-disk caches: structure-constant tables and generator expansions.
//!
//! Both are line-oriented text. Table records are `n u v w lambda coeff`
//! sorted by `(u, v, λ, w)`; expansion records are `n u mu word coeff`.
//! Lines starting with `#` are metadata.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_rational::BigRational;
use num_traits::Zero;

use crate::class::QClass;
use crate::error::{Error, Result};
use crate::qh::engine::{GeneratorTerm, QhEngine};
use crate::roots::DegreeVector;
use crate::weyl::{parse_word_letters, Permutation};

pub const ENGINE_VERSION: &str = concat!("flagq-core ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    pub n: usize,
    pub entries: BTreeMap<(Permutation, Permutation), QClass>,
    pub engine_version: String,
    pub generated: u64,
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    }
}

impl StructureTable {
    pub fn new(n: usize) -> Self {
        StructureTable {
            n,
            entries: BTreeMap::new(),
            engine_version: ENGINE_VERSION.to_string(),
            generated: now(),
        }
    }

    /// Inserts both `(u, v)` and `(v, u)`.
    pub fn insert(&mut self, u: Permutation, v: Permutation, product: QClass) {
        self.entries.insert((v.clone(), u.clone()), product.clone());
        self.entries.insert((u, v), product);
    }

    pub fn get(&self, u: &Permutation, v: &Permutation) -> Option<&QClass> {
        self.entries.get(&(u.clone(), v.clone()))
    }

    pub fn from_engine(engine: &QhEngine) -> Self {
        let mut t = StructureTable::new(engine.n());
        for ((u, v), p) in engine.cached_products() {
            t.insert(u, v, (*p).clone());
        }
        t
    }

    pub fn seed(&self, engine: &QhEngine) {
        for ((u, v), p) in &self.entries {
            engine.seed_product(u.clone(), v.clone(), p.clone());
        }
    }

    /// Records sorted by `(u, v, λ, w)`. A product that is zero gets no
    /// records; an entry is written as a single `0` record so that the
    /// pair is still known after a round trip.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("# flagq structure table\n");
        out.push_str(&format!("# engine {}\n", self.engine_version));
        out.push_str(&format!("# generated {}\n", self.generated));
        for ((u, v), p) in &self.entries {
            if p.is_empty() {
                out.push_str(&format!("{} {u} {v} - - 0\n", self.n));
                continue;
            }
            let mut terms: Vec<_> = p.iter().collect();
            terms.sort_by(|a, b| a.0.cmp(b.0).then_with(|| a.1.cmp(b.1)));
            for (lambda, w, c) in terms {
                out.push_str(&format!("{} {u} {v} {w} {} {c}\n", self.n, lambda.to_csv()));
            }
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        }
        fs::write(path, self.render()).map_err(|e| io_err(path, e))
    }

    pub fn parse(n: usize, text: &str, origin: &str) -> Result<Self> {
        let corrupt = |line: usize, reason: String| Error::CacheCorrupt {
            path: origin.to_string(),
            line,
            reason,
        };
        let mut t = StructureTable::new(n);
        t.generated = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            if let Some(meta) = raw.strip_prefix('#') {
                let meta = meta.trim();
                if let Some(v) = meta.strip_prefix("engine ") {
                    t.engine_version = v.to_string();
                } else if let Some(v) = meta.strip_prefix("generated ") {
                    t.generated = v
                        .parse()
                        .map_err(|_| corrupt(line, format!("bad timestamp {v:?}")))?;
                }
                continue;
            }
            let f: Vec<&str> = raw.split_whitespace().collect();
            if f.len() != 6 {
                return Err(corrupt(
                    line,
                    format!("expected 6 fields, found {}", f.len()),
                ));
            }
            let rn: usize = f[0]
                .parse()
                .map_err(|_| corrupt(line, format!("bad rank {:?}", f[0])))?;
            if rn != n {
                return Err(corrupt(
                    line,
                    format!("record for n={rn} in a table for n={n}"),
                ));
            }
            let perm = |s: &str| {
                Permutation::parse(s)
                    .map_err(|e| corrupt(line, e.to_string()))
                    .and_then(|p| {
                        if p.n() == n {
                            Ok(p)
                        } else {
                            Err(corrupt(line, format!("{s} is not in S_{n}")))
                        }
                    })
            };
            let (u, v) = (perm(f[1])?, perm(f[2])?);
            let entry = t.entries.entry((u.clone(), v.clone())).or_default();
            if f[3] == "-" {
                if f[4] != "-" || f[5] != "0" {
                    return Err(corrupt(line, "malformed zero record".into()));
                }
                continue;
            }
            let w = perm(f[3])?;
            let lambda =
                DegreeVector::parse_csv(n, f[4]).map_err(|e| corrupt(line, e.to_string()))?;
            let c: BigRational = f[5]
                .parse()
                .map_err(|_| corrupt(line, format!("bad coefficient {:?}", f[5])))?;
            if c.is_zero() {
                return Err(corrupt(line, "zero coefficient".into()));
            }
            entry.add_term(lambda, w, c);
        }
        // symmetry is part of the format
        for ((u, v), p) in &t.entries {
            match t.entries.get(&(v.clone(), u.clone())) {
                Some(q) if q == p => {}
                _ => {
                    return Err(corrupt(
                        0,
                        format!("entries ({u},{v}) and ({v},{u}) disagree"),
                    ));
                }
            }
        }
        Ok(t)
    }

    pub fn read(n: usize, path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        Self::parse(n, &text, &path.display().to_string())
    }
}

pub fn table_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("fl{n}.table"))
}

pub fn expansions_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("fl{n}.expansions"))
}

pub fn render_expansions(engine: &QhEngine) -> String {
    let n = engine.n();
    let mut out = String::new();
    out.push_str("# flagq generator expansions\n");
    out.push_str(&format!("# engine {ENGINE_VERSION}\n"));
    for (_, exp) in engine.known_expansions() {
        for (u, terms) in exp.iter() {
            for t in terms {
                let word = if t.word.is_empty() {
                    "-".to_string()
                } else {
                    t.word
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                out.push_str(&format!("{n} {u} {} {word} {}\n", t.mu.to_csv(), t.coeff));
            }
        }
    }
    out
}

/// Parses an expansions file and seeds every degree it fully covers.
pub fn load_expansions(engine: &QhEngine, text: &str, origin: &str) -> Result<usize> {
    let n = engine.n();
    let corrupt = |line: usize, reason: String| Error::CacheCorrupt {
        path: origin.to_string(),
        line,
        reason,
    };
    let mut by_degree: BTreeMap<usize, BTreeMap<Permutation, Vec<GeneratorTerm>>> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = raw.split_whitespace().collect();
        if f.len() != 5 {
            return Err(corrupt(
                line,
                format!("expected 5 fields, found {}", f.len()),
            ));
        }
        if f[0].parse::<usize>().ok() != Some(n) {
            return Err(corrupt(
                line,
                format!("rank {:?} does not match n={n}", f[0]),
            ));
        }
        let u = Permutation::parse(f[1]).map_err(|e| corrupt(line, e.to_string()))?;
        if u.n() != n {
            return Err(corrupt(line, format!("{} is not in S_{n}", f[1])));
        }
        let mu = DegreeVector::parse_csv(n, f[2]).map_err(|e| corrupt(line, e.to_string()))?;
        let word = if f[3] == "-" {
            Vec::new()
        } else {
            parse_word_letters(f[3]).map_err(|e| corrupt(line, e.to_string()))?
        };
        if word.iter().any(|&i| i == 0 || i >= n) || word.windows(2).any(|p| p[0] > p[1]) {
            return Err(corrupt(line, format!("bad generator word {:?}", f[3])));
        }
        let coeff: BigRational = f[4]
            .parse()
            .map_err(|_| corrupt(line, format!("bad coefficient {:?}", f[4])))?;
        if word.len() as i64 + mu.pair_2rho() as i64 != u.length() as i64 {
            return Err(corrupt(line, "term degree does not match the class".into()));
        }
        by_degree
            .entry(u.length())
            .or_default()
            .entry(u)
            .or_default()
            .push(GeneratorTerm { mu, word, coeff });
    }
    let mut seeded = 0;
    for (d, exp) in by_degree {
        if engine.seed_expansions(d, exp) {
            seeded += 1;
        }
    }
    Ok(seeded)
}

/// Opens an engine for `n`, seeded from `dir` when cache files exist.
pub fn load_engine(n: usize, dir: Option<&Path>) -> Result<QhEngine> {
    let engine = QhEngine::new(n);
    let Some(dir) = dir else {
        return Ok(engine);
    };
    let ep = expansions_path(dir, n);
    if ep.exists() {
        let text = fs::read_to_string(&ep).map_err(|e| io_err(&ep, e))?;
        load_expansions(&engine, &text, &ep.display().to_string())?;
    }
    let tp = table_path(dir, n);
    if tp.exists() {
        StructureTable::read(n, &tp)?.seed(&engine);
    }
    Ok(engine)
}

/// Writes the engine's expansions and products to `dir`.
pub fn save_engine(engine: &QhEngine, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let ep = expansions_path(dir, engine.n());
    fs::write(&ep, render_expansions(engine)).map_err(|e| io_err(&ep, e))?;
    StructureTable::from_engine(engine).write(&table_path(dir, engine.n()))
}
