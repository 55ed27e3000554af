//! `re,im` sample files: one complex value per line, blank lines ignored.

use std::path::Path;

use rmq::{Complex64, Error, ReceivedVector};

pub fn parse(text: &str) -> Result<ReceivedVector, Error> {
    let mut samples = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: idx + 1, msg };
        let (re, im) = line
            .split_once(',')
            .ok_or_else(|| err(format!("expected `re,im`, got {line:?}")))?;
        let value = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| err(format!("bad number {:?}: {e}", t.trim())))
        };
        samples.push(Complex64::new(value(re)?, value(im)?));
    }
    ReceivedVector::new(samples)
}

pub fn read(path: &Path) -> Result<ReceivedVector, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", path.display()),
    })?;
    parse(&text)
}
