use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

use crate::{validate_id, BFileSequence, OeisError};

pub const DEFAULT_BASE_URL: &str = "https://oeis.org";

/// Where a b-file comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FetchSource {
    /// Bundled, checked-in data; no i/o at all. The default for tests and
    /// verification runs.
    Fixture,
    /// On-disk cache first, then an HTTP GET of `<base>/Axxxxxx/bxxxxxx.txt`.
    Remote,
}

#[derive(Debug, Clone)]
pub struct OeisClient {
    base_url: String,
    cache_dir: PathBuf,
}

impl Default for OeisClient {
    fn default() -> Self {
        Self::from_env()
    }
}

impl OeisClient {
    /// Reads `OEIS_BASE_URL` and `MOMENTGENUS_CACHE`, with the public
    /// host and a per-user cache directory as fallbacks.
    pub fn from_env() -> Self {
        let base_url =
            std::env::var("OEIS_BASE_URL").unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
        let cache_dir = std::env::var_os("MOMENTGENUS_CACHE")
            .map(PathBuf::from)
            .unwrap_or_else(default_cache_dir);
        OeisClient {
            base_url,
            cache_dir,
        }
    }

    pub fn with_base_url(mut self, url: impl Into<String>) -> Self {
        self.base_url = url.into();
        self
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = dir.into();
        self
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    pub fn fetch(&self, id: &str, source: FetchSource) -> Result<BFileSequence, OeisError> {
        let digits = validate_id(id)?;
        match source {
            FetchSource::Fixture => {
                let text = fixture_text(id).ok_or_else(|| OeisError::MissingFixture {
                    id: id.to_string(),
                })?;
                BFileSequence::parse(id, text)
            }
            FetchSource::Remote => self.fetch_remote(id, digits),
        }
    }

    fn fetch_remote(&self, id: &str, digits: &str) -> Result<BFileSequence, OeisError> {
        let cache_path = self.cache_dir.join(format!("b{digits}.txt"));
        if let Ok(text) = fs::read_to_string(&cache_path) {
            return BFileSequence::parse(id, &text);
        }
        let url = format!(
            "{}/{}/b{}.txt",
            self.base_url.trim_end_matches('/'),
            id,
            digits
        );
        let failed = |message: String| OeisError::FetchFailed {
            url: url.clone(),
            message,
        };
        let agent = ureq::builder()
            .timeout_connect(Duration::from_secs(10))
            .timeout(Duration::from_secs(60))
            .build();
        let response = agent.get(&url).call().map_err(|e| failed(e.to_string()))?;
        let text = response.into_string().map_err(|e| failed(e.to_string()))?;
        // Parse before caching so a bad download never poisons the cache.
        let seq = BFileSequence::parse(id, &text)?;
        self.write_cache(&cache_path, digits, &text)?;
        Ok(seq)
    }

    /// Write-to-temp-then-rename: concurrent fetchers of the same id race
    /// harmlessly, and readers never observe a half-written file.
    fn write_cache(&self, path: &Path, digits: &str, text: &str) -> Result<(), OeisError> {
        static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source: std::io::Error| OeisError::CacheIo { path, source }
        };
        fs::create_dir_all(&self.cache_dir).map_err(io_err(&self.cache_dir))?;
        let tmp_path = self.cache_dir.join(format!(
            ".b{digits}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp_path, text).map_err(io_err(&tmp_path))?;
        fs::rename(&tmp_path, path).map_err(io_err(path))?;
        Ok(())
    }
}

fn default_cache_dir() -> PathBuf {
    match std::env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache").join("momentgenus"),
        None => std::env::temp_dir().join("momentgenus-cache"),
    }
}

fn fixture_text(id: &str) -> Option<&'static str> {
    match id {
        "A000337" => Some(include_str!("../fixtures/b000337.txt")),
        "A055580" => Some(include_str!("../fixtures/b055580.txt")),
        "A027608" => Some(include_str!("../fixtures/b027608.txt")),
        "A211386" => Some(include_str!("../fixtures/b211386.txt")),
        _ => None,
    }
}
