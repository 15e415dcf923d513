//! Line-oriented checkpoint files.
//!
//! ```text
//! fsdsq-checkpoint  v1  alphabet_size=2  max_len=18  properties=square_cap,...
//! <n>  <prefix>  <block result as JSON>
//! ```
//!
//! Fields are tab-separated. The whole file is rewritten through a temporary
//! sibling and renamed into place, so a crash leaves either the old or the
//! new version.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::analysis::Property;
use crate::error::{Error, Result};
use crate::search::stats::BlockResult;
use crate::word::Word;

const MAGIC: &str = "fsdsq-checkpoint";
const VERSION: &str = "v1";

/// A block of the sweep: all canonical words of length `n` extending
/// `prefix`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockId {
    pub n: usize,
    pub prefix: Word,
}

pub fn header_line(alphabet_size: usize, max_len: usize, properties: &[Property]) -> String {
    let props: Vec<&str> = properties.iter().map(|p| p.name()).collect();
    format!(
        "{MAGIC}\t{VERSION}\talphabet_size={alphabet_size}\tmax_len={max_len}\tproperties={}",
        props.join(",")
    )
}

fn bad(path: &Path, reason: impl Into<String>) -> Error {
    Error::Checkpoint {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

/// Completed blocks recorded in `path`; empty if the file does not exist.
/// The header must match `header` exactly.
pub fn load(path: &Path, header: &str) -> Result<BTreeMap<BlockId, BlockResult>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == header => {}
        Some(h) => {
            return Err(bad(
                path,
                format!("header {h:?} does not match this sweep ({header:?})"),
            ))
        }
        None => return Err(bad(path, "empty file")),
    }
    let mut out = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        let mut parts = line.splitn(3, '\t');
        let (Some(n), Some(prefix), Some(json)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(path, format!("line {} is malformed", i + 2)));
        };
        let n: usize = n
            .parse()
            .map_err(|_| bad(path, format!("line {}: bad length {n:?}", i + 2)))?;
        let prefix: Word = prefix
            .parse()
            .map_err(|e| bad(path, format!("line {}: {e}", i + 2)))?;
        let result: BlockResult =
            serde_json::from_str(json).map_err(|e| bad(path, format!("line {}: {e}", i + 2)))?;
        if result.stats.n != n {
            return Err(bad(path, format!("line {}: block length mismatch", i + 2)));
        }
        out.insert(BlockId { n, prefix }, result);
    }
    Ok(out)
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

/// Atomically replace `path` with the header and all `blocks`.
pub fn store(path: &Path, header: &str, blocks: &BTreeMap<BlockId, BlockResult>) -> Result<()> {
    let tmp = tmp_path(path);
    let mut f = fs::File::create(&tmp)?;
    let mut text = String::with_capacity(256 * (blocks.len() + 1));
    text.push_str(header);
    text.push('\n');
    for (id, result) in blocks {
        let json = serde_json::to_string(result).map_err(|e| bad(path, e.to_string()))?;
        text.push_str(&format!("{}\t{}\t{json}\n", id.n, id.prefix));
    }
    f.write_all(text.as_bytes())?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path)?;
    Ok(())
}
