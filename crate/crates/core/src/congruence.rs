//! Divisibility and residue comparison modulo unit-leading polynomials such
//! as `[n]`, `[p]` and `[p]^2`, plus the report record every checker emits.

use std::fmt;
use std::time::Instant;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::bigint_poly::{IntPoly, PolyError};

/// True iff `a = d * c` for some integer polynomial `c`.
pub fn divides(d: &IntPoly, a: &IntPoly) -> Result<bool, PolyError> {
    match a.exact_div(d) {
        Ok(_) => Ok(true),
        Err(PolyError::NotDivisible { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Remainder of `a` modulo a polynomial with leading coefficient `±1`.
pub fn rem_mod(a: &IntPoly, m: &IntPoly) -> Result<IntPoly, PolyError> {
    a.divrem_unit_leading(m).map(|(_, rem)| rem)
}

pub fn residue_equal_mod(a: &IntPoly, b: &IntPoly, m: &IntPoly) -> Result<bool, PolyError> {
    Ok(rem_mod(&(a - b), m)?.is_zero())
}

/// Reduces an exponent of `q` into `[0, p)`.
///
/// Valid for residues of the shape `q^e [p]` modulo `[p]^2`, since
/// `(q^p - 1)[p] = (q - 1)[p]^2` gives `q^p [p] ≡ [p]`.
pub fn normalize_exponent_mod_p(e: i64, p: u64) -> u64 {
    assert!(p >= 1, "modulus must be positive");
    e.rem_euclid(p as i64) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Renderings of both sides of a failed claim and of their (reduced)
/// difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
}

impl Witness {
    pub fn new(lhs: impl fmt::Display, rhs: impl fmt::Display, difference: impl fmt::Display) -> Self {
        Witness {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            difference: difference.to_string(),
        }
    }
}

/// Ordered named integer parameters, rendered `k=v;k=v`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params(Vec<(String, i64)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, name: impl Into<String>, value: i64) -> Self {
        self.0.push((name.into(), value));
        self
    }

    /// Appends `a1, a2, ...` for a parameter list.
    pub fn with_list(mut self, prefix: &str, values: &[usize]) -> Self {
        for (i, v) in values.iter().enumerate() {
            self.0.push((format!("{prefix}{}", i + 1), *v as i64));
        }
        self
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Outcome of checking one claim at one parameter point.
///
/// `note` is a free-form annotation for human-readable output (for example
/// `vanishing-sum`); it is not part of the JSON schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub claim_id: String,
    pub params: Params,
    pub status: Status,
    pub witness: Option<Witness>,
    pub elapsed_ms: u64,
    pub note: Option<String>,
}

impl CongruenceReport {
    pub fn pass(claim_id: impl Into<String>, params: Params) -> Self {
        CongruenceReport {
            claim_id: claim_id.into(),
            params,
            status: Status::Pass,
            witness: None,
            elapsed_ms: 0,
            note: None,
        }
    }

    pub fn fail(claim_id: impl Into<String>, params: Params, witness: Witness) -> Self {
        CongruenceReport {
            status: Status::Fail,
            witness: Some(witness),
            ..Self::pass(claim_id, params)
        }
    }

    pub fn skipped(claim_id: impl Into<String>, params: Params, reason: impl Into<String>) -> Self {
        CongruenceReport {
            status: Status::Skipped,
            note: Some(reason.into()),
            ..Self::pass(claim_id, params)
        }
    }

    /// Pass when `ok`, otherwise a failure carrying `witness()`.
    pub fn from_outcome(
        claim_id: impl Into<String>,
        params: Params,
        ok: bool,
        witness: impl FnOnce() -> Witness,
    ) -> Self {
        if ok {
            Self::pass(claim_id, params)
        } else {
            Self::fail(claim_id, params, witness())
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Runs `check` and stamps the wall-clock time it took.
    pub fn timed<E>(check: impl FnOnce() -> Result<Self, E>) -> Result<Self, E> {
        let start = Instant::now();
        let mut report = check()?;
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        Ok(report)
    }

    /// Ordering key for deterministic aggregation.
    pub fn sort_key(&self) -> (&str, &Params) {
        (&self.claim_id, &self.params)
    }
}

impl Serialize for CongruenceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CongruenceReport", 5)?;
        s.serialize_field("claim_id", &self.claim_id)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("witness", &self.witness)?;
        s.serialize_field("elapsed_ms", &self.elapsed_ms)?;
        s.end()
    }
}
