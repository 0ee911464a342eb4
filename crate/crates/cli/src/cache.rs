//! Line-delimited JSON cache of sweep results, one record per case.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use cusp_strata::certify::{Comparison, Mode};
use serde::{Deserialize, Serialize};

pub const CACHE_FILE: &str = "sweep.jsonl";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseKey {
    pub generators: Vec<u64>,
    pub profile: Vec<u64>,
    pub mode: String,
    pub seed: Option<u64>,
}

impl CaseKey {
    pub fn new(generators: &[u64], profile: &[u64], mode: Mode) -> Self {
        let (mode, seed) = match mode {
            Mode::Exact => ("exact".to_string(), None),
            Mode::Modular { prime, seed, trials } => (format!("modular/p={prime}/trials={trials}"), Some(seed)),
        };
        CaseKey {
            generators: generators.to_vec(),
            profile: profile.to_vec(),
            mode,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub key: CaseKey,
    pub comparison: Comparison,
}

impl Record {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}

/// Records in file order, with the lines they were read from.
pub struct Cache {
    path: PathBuf,
    records: Vec<Record>,
    index: BTreeMap<CaseKey, usize>,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let path = dir.join(CACHE_FILE);
        let mut cache = Cache {
            path,
            records: Vec::new(),
            index: BTreeMap::new(),
        };
        if cache.path.exists() {
            let file = File::open(&cache.path).with_context(|| format!("reading {}", cache.path.display()))?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let record: Record = serde_json::from_str(&line)
                    .with_context(|| format!("{}:{}: malformed record", cache.path.display(), i + 1))?;
                cache.insert(record);
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &CaseKey) -> Option<&Record> {
        self.index.get(key).map(|&i| &self.records[i])
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn insert(&mut self, record: Record) -> bool {
        match self.index.get(&record.key) {
            Some(&i) => {
                self.records[i] = record;
                true
            }
            None => {
                self.index.insert(record.key.clone(), self.records.len());
                self.records.push(record);
                false
            }
        }
    }

    /// Appends a new record, or rewrites the file when it replaces one.
    pub fn store(&mut self, record: Record) -> Result<()> {
        let line = record.to_line();
        if self.insert(record) {
            self.rewrite()
        } else {
            let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
            writeln!(f, "{line}")?;
            Ok(())
        }
    }

    fn rewrite(&self) -> Result<()> {
        let tmp = self.path.with_extension("jsonl.tmp");
        let mut f = File::create(&tmp)?;
        for r in &self.records {
            writeln!(f, "{}", r.to_line())?;
        }
        f.sync_all()?;
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
