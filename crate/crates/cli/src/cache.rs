//! Append-only JSON-lines cache of scan records, one object per line.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use crate::report::ScanRecord;
use crate::CliError;

pub struct Cache {
    path: PathBuf,
    file: File,
    records: BTreeMap<u64, ScanRecord>,
    needs_newline: bool,
}

impl Cache {
    /// Open or create the cache. A corrupted final line is truncated with a
    /// warning; corruption anywhere else is an error.
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let env = |e: std::io::Error| CliError::Env(format!("cache {}: {e}", path.display()));
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(path)
            .map_err(env)?;
        let mut text = String::new();
        file.read_to_string(&mut text).map_err(env)?;

        let mut records = BTreeMap::new();
        let mut offset = 0usize;
        let mut needs_newline = false;
        let lines: Vec<&str> = text.split_inclusive('\n').collect();
        for (i, line) in lines.iter().enumerate() {
            let body = line.trim_end_matches(['\n', '\r']);
            if body.trim().is_empty() {
                offset += line.len();
                continue;
            }
            match serde_json::from_str::<ScanRecord>(body) {
                Ok(r) => {
                    needs_newline = !line.ends_with('\n');
                    records.insert(r.p, r);
                }
                Err(e) if i + 1 == lines.len() => {
                    eprintln!(
                        "warning: cache {}: dropping corrupted trailing line {} ({e})",
                        path.display(),
                        i + 1
                    );
                    file.set_len(offset as u64).map_err(env)?;
                    file.seek(SeekFrom::End(0)).map_err(env)?;
                    needs_newline = false;
                    break;
                }
                Err(e) => {
                    return Err(CliError::Env(format!(
                        "cache {}: line {} is corrupted ({e}); refusing to continue",
                        path.display(),
                        i + 1
                    )))
                }
            }
            offset += line.len();
        }
        Ok(Self {
            path: path.to_path_buf(),
            file,
            records,
            needs_newline,
        })
    }

    pub fn get(&self, p: u64) -> Option<&ScanRecord> {
        self.records.get(&p)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Append one record; later lines for the same prime take precedence.
    pub fn append(&mut self, r: &ScanRecord) -> Result<(), CliError> {
        let env = |e: std::io::Error| CliError::Env(format!("cache {}: {e}", self.path.display()));
        let mut line = serde_json::to_string(r).map_err(|e| CliError::Env(e.to_string()))?;
        line.push('\n');
        if self.needs_newline {
            line.insert(0, '\n');
            self.needs_newline = false;
        }
        self.file.write_all(line.as_bytes()).map_err(env)?;
        self.file.sync_data().map_err(env)?;
        self.records.insert(r.p, r.clone());
        Ok(())
    }
}
