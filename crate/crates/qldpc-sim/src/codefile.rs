//! Plain-text code files.
//!
//! Format: a header `n <n> m <m>`, then either a `rows` section with m
//! strings over {I, X, Y, Z}, or a `gb ell <l>` section with the two
//! circulant exponent lists `a: e1 e2 ...` and `b: e1 e2 ...`. Lines
//! starting with `#` (and trailing `# ...` fragments) are comments. The
//! logical count k is always computed from the rows, never read from the
//! file.

use qldpc_core::code::{build_gb_code, CodeError, GbCodeSpec, StabilizerCode};
use qldpc_core::pauli::PauliVector;
use std::fmt;
use std::fs;
use std::path::Path;

#[derive(Debug)]
pub enum CodeFileError {
    Io(std::io::Error),
    Parse {
        line: usize,
        message: String,
    },
    Code(CodeError),
    /// Header (n, m) disagrees with the body.
    HeaderMismatch {
        declared: (usize, usize),
        actual: (usize, usize),
    },
}

impl fmt::Display for CodeFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFileError::Io(e) => write!(f, "cannot read code file: {e}"),
            CodeFileError::Parse { line, message } => {
                write!(f, "code file line {line}: {message}")
            }
            CodeFileError::Code(e) => write!(f, "invalid code: {e}"),
            CodeFileError::HeaderMismatch { declared, actual } => write!(
                f,
                "header declares n={} m={} but the body gives n={} m={}",
                declared.0, declared.1, actual.0, actual.1
            ),
        }
    }
}

impl std::error::Error for CodeFileError {}

impl From<CodeError> for CodeFileError {
    fn from(e: CodeError) -> Self {
        CodeFileError::Code(e)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> CodeFileError {
    CodeFileError::Parse {
        line,
        message: message.into(),
    }
}

/// Parse a code from file contents.
pub fn parse_code(text: &str) -> Result<StabilizerCode, CodeFileError> {
    // Strip comments, keep (1-based line number, content).
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            (i + 1, content)
        })
        .filter(|(_, c)| !c.is_empty())
        .collect();

    let mut it = lines.into_iter();
    let (header_no, header) = it.next().ok_or(parse_err(0, "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match tokens.as_slice() {
        ["n", n, "m", m] => {
            let n: usize = n
                .parse()
                .map_err(|_| parse_err(header_no, format!("bad qubit count '{n}'")))?;
            let m: usize = m
                .parse()
                .map_err(|_| parse_err(header_no, format!("bad check count '{m}'")))?;
            (n, m)
        }
        _ => {
            return Err(parse_err(
                header_no,
                format!("expected header 'n <n> m <m>', found '{header}'"),
            ))
        }
    };

    let (mode_no, mode) = it.next().ok_or(parse_err(
        header_no,
        "missing 'rows' or 'gb ell <l>' section",
    ))?;
    let mode_tokens: Vec<&str> = mode.split_whitespace().collect();
    match mode_tokens.as_slice() {
        ["rows"] => {
            let mut rows: Vec<PauliVector> = Vec::with_capacity(m);
            for _ in 0..m {
                let (line_no, row) = it
                    .next()
                    .ok_or(parse_err(mode_no, format!("expected {m} rows")))?;
                let v: PauliVector = row
                    .parse()
                    .map_err(|e| parse_err(line_no, format!("{e}")))?;
                if v.len() != n {
                    return Err(parse_err(
                        line_no,
                        format!("row has {} symbols, expected {n}", v.len()),
                    ));
                }
                rows.push(v);
            }
            if let Some((line_no, extra)) = it.next() {
                return Err(parse_err(line_no, format!("unexpected trailing '{extra}'")));
            }
            let code = StabilizerCode::new(rows)?;
            let actual = (code.n(), code.m());
            if actual != (n, m) {
                return Err(CodeFileError::HeaderMismatch {
                    declared: (n, m),
                    actual,
                });
            }
            Ok(code)
        }
        ["gb", "ell", ell] => {
            let ell: usize = ell
                .parse()
                .map_err(|_| parse_err(mode_no, format!("bad circulant size '{ell}'")))?;
            let a = parse_exponents(&mut it, "a")?;
            let b = parse_exponents(&mut it, "b")?;
            if let Some((line_no, extra)) = it.next() {
                return Err(parse_err(line_no, format!("unexpected trailing '{extra}'")));
            }
            let spec = GbCodeSpec::new(ell, a, b)?;
            let code = build_gb_code(&spec)?;
            let actual = (code.n(), code.m());
            if actual != (n, m) {
                return Err(CodeFileError::HeaderMismatch {
                    declared: (n, m),
                    actual,
                });
            }
            Ok(code)
        }
        _ => Err(parse_err(
            mode_no,
            format!("expected 'rows' or 'gb ell <l>', found '{mode}'"),
        )),
    }
}

fn parse_exponents<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    name: &str,
) -> Result<Vec<usize>, CodeFileError> {
    let (line_no, line) = it
        .next()
        .ok_or(parse_err(0, format!("missing '{name}:' exponent list")))?;
    let Some(rest) = line.strip_prefix(&format!("{name}:")) else {
        return Err(parse_err(
            line_no,
            format!("expected '{name}: e1 e2 ...', found '{line}'"),
        ));
    };
    rest.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("bad exponent '{tok}'")))
        })
        .collect()
}

/// Load and validate a code file from disk.
pub fn load_code(path: &Path) -> Result<StabilizerCode, CodeFileError> {
    let text = fs::read_to_string(path).map_err(CodeFileError::Io)?;
    parse_code(&text)
}
