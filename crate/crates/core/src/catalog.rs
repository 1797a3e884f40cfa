//! Built-in data sets and the vector-set text format.
//!
//! The format is line oriented: `basis <name>: (e,…,e); (e,…,e); …` with
//! `#` comments and blank lines ignored. Entries are sums of rational
//! multiples of 1, `w` and `w^2`, e.g. `1`, `-1/2`, `w`, `w^2`, `1+2*w`.
//! `w` is the only radical admitted; everything stays inside Q(ω).
//!
//! The built-in seven-context set is shipped in this same format and fully
//! re-validated at load: seven orthogonal bases in dimension six sharing 21
//! rays, each ray common to exactly two bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::contextuality::{validate_context_set, ContextSet, ContextualityError};
use crate::exact::{EisensteinScalar, Ket};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: vector has {got} entries, expected {expected}")]
    Dimension {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Invalid(#[from] ContextualityError),
}

/// The 21-ray, seven-basis KS set in dimension six.
///
/// Each of the seven orthogonal bases shares exactly one ray with each of
/// the other six, so rays carry the pair labels 12, 13, …, 67 of the two
/// bases containing them.
const SEVEN_CONTEXT_TEXT: &str = "\
# seven orthogonal bases in dimension 6 over Q(w), w = exp(2*pi*i/3)
basis B1: (1,0,0,0,0,0); (0,1,0,0,0,0); (0,0,1,0,0,0); (0,0,0,1,0,0); (0,0,0,0,1,0); (0,0,0,0,0,1)
basis B2: (1,0,0,0,0,0); (0,0,1,1,1,1); (0,1,0,1,w,w^2); (0,1,1,0,w^2,w); (0,1,w,w^2,0,1); (0,1,w^2,w,1,0)
basis B3: (0,1,0,0,0,0); (0,0,1,1,1,1); (1,0,0,1,w^2,w); (1,0,1,0,w,w^2); (1,0,w^2,w,0,1); (1,0,w,w^2,1,0)
basis B4: (0,0,1,0,0,0); (0,1,0,1,w,w^2); (1,0,0,1,w^2,w); (1,1,0,0,1,1); (w,w^2,0,1,0,1); (w^2,w,0,1,1,0)
basis B5: (0,0,0,1,0,0); (0,1,1,0,w^2,w); (1,0,1,0,w,w^2); (1,1,0,0,1,1); (w^2,w,1,0,0,1); (w,w^2,1,0,1,0)
basis B6: (0,0,0,0,1,0); (0,1,w,w^2,0,1); (1,0,w^2,w,0,1); (w,w^2,0,1,0,1); (w^2,w,1,0,0,1); (1,1,1,1,0,0)
basis B7: (0,0,0,0,0,1); (0,1,w^2,w,1,0); (1,0,w,w^2,1,0); (w^2,w,0,1,1,0); (w,w^2,1,0,1,0); (1,1,1,1,0,0)
";

/// Loads the built-in seven-context set, asserting its integrity: seven
/// orthogonal bases, 21 distinct rays, every ray in exactly two bases.
pub fn builtin_seven_context() -> ContextSet {
    let cs = parse_vector_set(SEVEN_CONTEXT_TEXT).expect("built-in data is valid");
    let report = validate_context_set(&cs).expect("built-in bases are orthogonal");
    assert_eq!(report.context_count, 7, "built-in set has seven bases");
    assert_eq!(report.ray_count, 21, "built-in set has 21 distinct rays");
    assert!(
        report.pairwise_shared,
        "every built-in ray belongs to exactly two bases"
    );
    cs
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct EntryCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    col_offset: usize,
}

impl<'a> EntryCursor<'a> {
    fn new(text: &'a str, line: usize, col_offset: usize) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
            line,
            col_offset,
        }
    }

    fn error(&self, message: impl Into<String>) -> CatalogError {
        CatalogError::Syntax {
            line: self.line,
            column: self.col_offset + self.pos + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn parse_unsigned_integer(&mut self) -> Result<BigInt, CatalogError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a digit"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are ASCII");
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn parse_rational(&mut self) -> Result<BigRational, CatalogError> {
        let numer = self.parse_unsigned_integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.parse_unsigned_integer()?;
            if denom.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// `w` or `w^2`, as a scalar.
    fn parse_omega_power(&mut self) -> Result<EisensteinScalar, CatalogError> {
        match self.bump() {
            Some(b'w') => {}
            _ => return Err(self.error("expected 'w'")),
        }
        if self.peek() == Some(b'^') {
            self.pos += 1;
            match self.bump() {
                Some(b'2') => Ok(EisensteinScalar::omega_squared()),
                _ => Err(self.error("only w^2 is supported")),
            }
        } else {
            Ok(EisensteinScalar::omega())
        }
    }

    /// term := rational ['*'] [w-power] | w-power
    fn parse_term(&mut self) -> Result<EisensteinScalar, CatalogError> {
        self.skip_ws();
        match self.peek() {
            Some(b'w') => self.parse_omega_power(),
            Some(b'0'..=b'9') => {
                let coeff = self.parse_rational()?;
                self.skip_ws();
                let explicit_star = self.peek() == Some(b'*');
                if explicit_star {
                    self.pos += 1;
                    self.skip_ws();
                }
                if self.peek() == Some(b'w') {
                    let base = self.parse_omega_power()?;
                    Ok(base.scale(&coeff))
                } else if explicit_star {
                    Err(self.error("expected 'w' after '*'"))
                } else {
                    Ok(EisensteinScalar::from_rational(coeff))
                }
            }
            Some(other) => Err(self.error(format!("unexpected character {:?}", other as char))),
            None => Err(self.error("empty entry")),
        }
    }

    /// entry := ['-'] term (('+'|'-') term)*
    fn parse_entry(&mut self) -> Result<EisensteinScalar, CatalogError> {
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = -acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = &acc - &t;
                }
                None => return Ok(acc),
                Some(other) => {
                    return Err(
                        self.error(format!("unexpected character {:?} in entry", other as char))
                    )
                }
            }
        }
    }
}

fn parse_entry_str(
    text: &str,
    line: usize,
    col_offset: usize,
) -> Result<EisensteinScalar, CatalogError> {
    let mut cursor = EntryCursor::new(text, line, col_offset);
    cursor.parse_entry()
}

/// One `(e,…,e)` group. `col_offset` is the 0-based column of `(`.
fn parse_vector(text: &str, line: usize, col_offset: usize) -> Result<Ket, CatalogError> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or(CatalogError::Syntax {
            line,
            column: col_offset + 1,
            message: "vector must be parenthesized: (e,...,e)".into(),
        })?;
    let mut entries = Vec::new();
    let mut offset = col_offset + 1;
    for piece in inner.split(',') {
        entries.push(parse_entry_str(piece, line, offset)?);
        offset += piece.len() + 1;
    }
    Ket::new(entries).map_err(|e| CatalogError::Invalid(ContextualityError::Exact(e)))
}

/// Parses a vector-set document into a validated context set. Duplicate rays
/// across bases are merged; each basis is checked to be a full orthogonal
/// basis of the (inferred) dimension.
pub fn parse_vector_set(text: &str) -> Result<ContextSet, CatalogError> {
    let mut names = Vec::new();
    let mut bases: Vec<Vec<Ket>> = Vec::new();
    let mut dimension: Option<usize> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let without_comment = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        let line = without_comment.trim();
        if line.is_empty() {
            continue;
        }
        let rest = line.strip_prefix("basis").ok_or(CatalogError::Syntax {
            line: line_no,
            column: 1,
            message: "expected a line of the form: basis <name>: (e,...); ...".into(),
        })?;
        let colon = rest.find(':').ok_or(CatalogError::Syntax {
            line: line_no,
            column: line.len(),
            message: "missing ':' after basis name".into(),
        })?;
        let name = rest[..colon].trim();
        if name.is_empty() {
            return Err(CatalogError::Syntax {
                line: line_no,
                column: 6,
                message: "empty basis name".into(),
            });
        }
        let vectors_part = &rest[colon + 1..];
        let mut kets = Vec::new();
        // column bookkeeping relative to the original line
        let base_col =
            raw_line.len() - raw_line.trim_start().len() + (line.len() - vectors_part.len());
        let mut offset = base_col;
        for piece in vectors_part.split(';') {
            let trimmed = piece.trim();
            if trimmed.is_empty() {
                offset += piece.len() + 1;
                continue;
            }
            let leading = piece.len() - piece.trim_start().len();
            let ket = parse_vector(trimmed, line_no, offset + leading)?;
            match dimension {
                None => dimension = Some(ket.dim()),
                Some(d) if d != ket.dim() => {
                    return Err(CatalogError::Dimension {
                        line: line_no,
                        expected: d,
                        got: ket.dim(),
                    })
                }
                Some(_) => {}
            }
            kets.push(ket);
            offset += piece.len() + 1;
        }
        names.push(name.to_string());
        bases.push(kets);
    }
    let dimension = dimension.ok_or(CatalogError::Syntax {
        line: 1,
        column: 1,
        message: "document contains no vectors".into(),
    })?;
    Ok(ContextSet::from_bases(dimension, bases, Some(names))?)
}

/// Renders a context set in the vector-set format. Shared rays are written
/// out in every basis containing them, exactly as parsed input would be.
pub fn render_vector_set(cs: &ContextSet) -> String {
    let mut out = String::new();
    for (name, basis) in cs.context_names().iter().zip(cs.bases()) {
        out.push_str("basis ");
        out.push_str(name);
        out.push_str(": ");
        for (i, ket) in basis.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            out.push('(');
            for (j, e) in ket.entries().iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&e.to_string());
            }
            out.push(')');
        }
        out.push('\n');
    }
    out
}
