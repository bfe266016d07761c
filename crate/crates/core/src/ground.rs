//! Ordered ground sets and formal sums over them.
//!
//! A formal sum such as `3x+y+5z+u` over the ordered ground set
//! `x < y < z < u` is stored as its coefficient vector `(3, 1, 5, 1)`.
//! Sums are the vertex type of every complex produced by this crate: an
//! atom is a unit vector, and collapsing a set of vertices into a new
//! vertex is componentwise addition.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// A finite, linearly ordered set of atom labels.
#[derive(Clone)]
pub struct GroundSet {
    inner: Arc<GroundInner>,
}

struct GroundInner {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    /// Builds a ground set; the order of `labels` becomes the atom order.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut atoms = Vec::new();
        let mut index = HashMap::new();
        for label in labels {
            let label = label.into();
            if !is_valid_label(&label) {
                return Err(Error::InvalidLabel(label));
            }
            if index.insert(label.clone(), atoms.len()).is_some() {
                return Err(Error::DuplicateLabel(label));
            }
            atoms.push(label);
        }
        Ok(GroundSet {
            inner: Arc::new(GroundInner { atoms, index }),
        })
    }

    pub fn atoms(&self) -> &[String] {
        &self.inner.atoms
    }

    pub fn len(&self) -> usize {
        self.inner.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.atoms.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.inner
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn label(&self, index: usize) -> &str {
        &self.inner.atoms[index]
    }

    /// The unit vector of an atom.
    pub fn atom_vec(&self, label: &str) -> Result<SumVec> {
        Ok(SumVec::unit(self.len(), self.index_of(label)?))
    }

    pub fn check(&self, v: &SumVec) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Parses `term ("+" term)*` where a term is an optional positive
    /// decimal coefficient followed by an atom label.
    pub fn parse_sum(&self, text: &str) -> Result<SumVec> {
        let bytes = text.as_bytes();
        let malformed = |pos: usize, reason: &str| Error::MalformedSum {
            text: text.to_owned(),
            pos,
            reason: reason.to_owned(),
        };
        let mut coeffs = vec![BigUint::zero(); self.len()];
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff = if pos > start {
                text[start..pos]
                    .parse::<BigUint>()
                    .map_err(|_| malformed(start, "bad coefficient"))?
            } else {
                BigUint::from(1u32)
            };
            skip_ws(&mut pos);
            let label_start = pos;
            if pos < bytes.len() && (bytes[pos].is_ascii_alphabetic() || bytes[pos] == b'_') {
                pos += 1;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
            } else {
                return Err(malformed(label_start, "expected an atom label"));
            }
            let index = self.index_of(&text[label_start..pos])?;
            coeffs[index] += coeff;
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'+' {
                return Err(malformed(pos, "expected `+`"));
            }
            pos += 1;
        }
        SumVec::new(coeffs)
    }

    /// Formats a sum in atom order, omitting zero terms and unit
    /// coefficients: `(2, 1, 0, 0)` becomes `2x+y`.
    pub fn format_sum(&self, v: &SumVec) -> String {
        let mut out = String::new();
        for (i, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            if *c != BigUint::from(1u32) {
                out.push_str(&c.to_string());
            }
            out.push_str(self.label(i));
        }
        out
    }

    /// Formats a set of sums as `{x,x+y,z}`.
    pub fn format_set<'a, I>(&self, items: I) -> String
    where
        I: IntoIterator<Item = &'a SumVec>,
    {
        let parts: Vec<String> = items.into_iter().map(|v| self.format_sum(v)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// JSON object `{label: coefficient}` in atom order, zeros omitted.
    /// Coefficients beyond `u64` are written as decimal strings.
    pub fn sum_to_json(&self, v: &SumVec) -> Value {
        let mut map = Map::new();
        for (i, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let value = match c.to_u64() {
                Some(n) => Value::from(n),
                None => Value::String(c.to_string()),
            };
            map.insert(self.label(i).to_owned(), value);
        }
        Value::Object(map)
    }

    /// Accepts the object encoding or a symbolic sum string.
    pub fn sum_from_json(&self, value: &Value) -> Result<SumVec> {
        match value {
            Value::String(s) => self.parse_sum(s),
            Value::Object(map) => {
                let mut coeffs = vec![BigUint::zero(); self.len()];
                for (label, c) in map {
                    let i = self.index_of(label)?;
                    coeffs[i] = match c {
                        Value::Number(n) => n
                            .as_u64()
                            .map(BigUint::from)
                            .ok_or_else(|| Error::Input(format!("bad coefficient {n}")))?,
                        Value::String(s) => s
                            .parse::<BigUint>()
                            .map_err(|_| Error::Input(format!("bad coefficient {s:?}")))?,
                        other => return Err(Error::Input(format!("bad coefficient {other}"))),
                    };
                }
                SumVec::new(coeffs)
            }
            other => Err(Error::Input(format!("expected a sum, found {other}"))),
        }
    }
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.atoms == other.inner.atoms
    }
}

impl Eq for GroundSet {}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.atoms()).finish()
    }
}

fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A nonzero vector of non-negative integers: one formal sum.
///
/// The derived order is lexicographic on the coefficient vector and is
/// the canonical order of vertices everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumVec(Vec<BigUint>);

impl SumVec {
    pub fn new(coeffs: Vec<BigUint>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroSum);
        }
        Ok(SumVec(coeffs))
    }

    pub fn from_u64s(coeffs: &[u64]) -> Result<Self> {
        SumVec::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); len];
        coeffs[index] = BigUint::from(1u32);
        SumVec(coeffs)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the atom if this is a unit vector.
    pub fn as_atom(&self) -> Option<usize> {
        let mut found = None;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || *c != BigUint::from(1u32) {
                return None;
            }
            found = Some(i);
        }
        found
    }

    /// Indices of atoms with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn add_assign(&mut self, other: &SumVec) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        Ok(())
    }
}

impl fmt::Debug for SumVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise sum of a nonempty set of vectors, i.e. `β⁺` for `β = set`.
pub fn vec_sum<'a, I>(set: I) -> Result<SumVec>
where
    I: IntoIterator<Item = &'a SumVec>,
{
    let mut iter = set.into_iter();
    let mut acc = iter.next().ok_or(Error::EmptySum)?.clone();
    for v in iter {
        acc.add_assign(v)?;
    }
    Ok(acc)
}
