use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg_pencil::{ComplexMatrix, GaussQ, Mode};
use crate::poly_core::rational::{q_from_f64, Q};

/// One matrix entry as written in a file.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    /// `[num_re, den_re, num_im, den_im]`; a zero denominator is read as one.
    Exact([BigInt; 4]),
    /// `[re, im]`.
    Float([f64; 2]),
}

impl Entry {
    pub fn value(&self) -> GaussQ {
        match self {
            Entry::Exact([nr, dr, ni, di]) => GaussQ::new(frac(nr, dr), frac(ni, di)),
            Entry::Float([re, im]) => GaussQ::new(q_from_f64(*re), q_from_f64(*im)),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Entry::Exact(v) => Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect()),
            Entry::Float([re, im]) => serde_json::json!([re, im]),
        }
    }
}

fn frac(n: &BigInt, d: &BigInt) -> Q {
    if d.is_zero() {
        Q::from_integer(n.clone())
    } else {
        Q::new(n.clone(), d.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFile {
    pub n: usize,
    pub mode: Mode,
    pub entries: Vec<Vec<Entry>>,
}

#[derive(Serialize, Deserialize)]
struct Raw {
    n: usize,
    #[serde(default)]
    mode: Option<Mode>,
    entries: Vec<Vec<Value>>,
}

fn int_field(v: &Value, ctx: &str) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{}: '{}' is not an integer", ctx, s))),
        Value::Number(x) => {
            if let Some(i) = x.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = x.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Parse(format!("{}: {} is not an integer", ctx, x)))
            }
        }
        _ => Err(Error::Parse(format!("{}: expected an integer", ctx))),
    }
}

fn float_field(v: &Value, ctx: &str) -> Result<f64> {
    let x = match v {
        Value::Number(x) => x.as_f64(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    };
    x.filter(|x| x.is_finite()).ok_or_else(|| Error::Parse(format!("{}: expected a finite number", ctx)))
}

fn parse_entry(v: &Value, i: usize, j: usize) -> Result<Entry> {
    let ctx = format!("row {}, column {}", i, j);
    let Value::Array(parts) = v else {
        return Err(Error::Parse(format!("{}: entry must be an array", ctx)));
    };
    match parts.len() {
        4 => {
            let f: Vec<BigInt> = parts.iter().map(|p| int_field(p, &ctx)).collect::<Result<_>>()?;
            Ok(Entry::Exact([f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()]))
        }
        2 => Ok(Entry::Float([float_field(&parts[0], &ctx)?, float_field(&parts[1], &ctx)?])),
        k => Err(Error::Parse(format!("{}: entry has {} fields, expected 2 or 4", ctx, k))),
    }
}

impl MatrixFile {
    pub fn parse_str(s: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
        if raw.n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        if raw.entries.len() != raw.n {
            return Err(Error::Parse(format!(
                "n = {} but entries has {} rows; row {} is missing or extra",
                raw.n,
                raw.entries.len(),
                raw.entries.len().min(raw.n)
            )));
        }
        let mut entries = Vec::with_capacity(raw.n);
        for (i, row) in raw.entries.iter().enumerate() {
            if row.len() != raw.n {
                return Err(Error::Parse(format!("row {} has {} entries, expected {}", i, row.len(), raw.n)));
            }
            entries.push(row.iter().enumerate().map(|(j, v)| parse_entry(v, i, j)).collect::<Result<Vec<_>>>()?);
        }
        let mode = raw.mode.unwrap_or_else(|| {
            if entries.iter().flatten().all(|e| matches!(e, Entry::Exact(_))) {
                Mode::Exact
            } else {
                Mode::Float
            }
        });
        Ok(MatrixFile { n: raw.n, mode, entries })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?;
        Self::parse_str(&s).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {}", path.display(), m)),
            e => e,
        })
    }

    /// Exact entries as reduced fractions, or pairs of doubles in float mode.
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.n();
        let entries = m
            .rows()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|z| match m.mode() {
                        Mode::Exact => Entry::Exact([
                            z.re.numer().clone(),
                            z.re.denom().clone(),
                            z.im.numer().clone(),
                            z.im.denom().clone(),
                        ]),
                        Mode::Float => Entry::Float([z.re.to_f64().unwrap_or(0.0), z.im.to_f64().unwrap_or(0.0)]),
                    })
                    .collect()
            })
            .collect();
        MatrixFile { n, mode: m.mode(), entries }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let rows = self.entries.iter().map(|r| r.iter().map(Entry::value).collect()).collect();
        Ok(ComplexMatrix::from_rows(rows)?.with_mode(self.mode))
    }

    pub fn to_json(&self) -> String {
        let mut s = format!(
            "{{\n  \"n\": {},\n  \"mode\": {},\n  \"entries\": [\n",
            self.n,
            serde_json::to_string(&self.mode).unwrap()
        );
        for (i, row) in self.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|e| e.to_json().to_string()).collect();
            s.push_str(&format!("    [{}]{}\n", cells.join(", "), if i + 1 < self.n { "," } else { "" }));
        }
        s.push_str("  ]\n}\n");
        s
    }

    pub fn sha256(&self) -> String {
        hex(&Sha256::digest(self.to_json().as_bytes()))
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{:02x}", b)).collect()
}

pub fn parse_matrix(path: &Path) -> Result<ComplexMatrix> {
    MatrixFile::read(path)?.to_matrix()
}

pub fn parse_matrix_str(s: &str) -> Result<ComplexMatrix> {
    MatrixFile::parse_str(s)?.to_matrix()
}

pub fn write_matrix(m: &ComplexMatrix, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, MatrixFile::from_matrix(m).to_json())?)
}
