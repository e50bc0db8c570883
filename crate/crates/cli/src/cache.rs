//! On-disk result cache keyed by a hash of the canonical diagram.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use khmut::{Coefficients, PlanarDiagram};
use sha2::{Digest, Sha256};

use crate::report::ResultDocument;

/// SHA-256 of the canonical PD text with crossings sorted.
pub fn diagram_hash(d: &PlanarDiagram) -> String {
    let c = d.canonical();
    let mut crossings: Vec<String> = c.crossings().iter().map(|x| x.to_string()).collect();
    crossings.sort();
    let text = format!("{}|loops={}", crossings.join(" "), c.free_circles());
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn default_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("KHMUT_CACHE_DIR") {
        return Some(dir.into());
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("khmut"))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    fn path(&self, key: &str, coeffs: Coefficients) -> PathBuf {
        let tag = match coeffs {
            Coefficients::Z => "z",
            Coefficients::Q => "q",
        };
        self.dir.join(format!("{key}-{tag}.json"))
    }

    /// A cached document, if present and readable; anything unreadable is a miss.
    pub fn load(&self, key: &str, coeffs: Coefficients) -> Option<ResultDocument> {
        let text = std::fs::read_to_string(self.path(key, coeffs)).ok()?;
        let doc: ResultDocument = serde_json::from_str(&text).ok()?;
        (doc.hash == key && doc.version == env!("CARGO_PKG_VERSION")).then_some(doc)
    }

    pub fn store(&self, doc: &ResultDocument) -> anyhow::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        write_atomic(
            &self.path(&doc.hash, doc.table.coefficients),
            doc.to_json().as_bytes(),
        )
    }
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
