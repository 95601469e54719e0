//! Splitting of 2 and 3 in the ring of integers of `Q(√D)` and the invariant
//! `v(R) = max(2·r2 + r1, q)`.

use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Inert,
    Ramified,
    Split,
}

impl std::fmt::Display for Splitting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
            Splitting::Split => "split",
        })
    }
}

pub fn is_square_free(d: i64) -> bool {
    let n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn check_d(d: i64) -> Result<()> {
    if d == 0 || d == 1 {
        return Err(Error::DOutOfRange(d));
    }
    if !is_square_free(d) {
        return Err(Error::NotSquareFree(d));
    }
    Ok(())
}

pub fn splitting_of_2(d: i64) -> Result<Splitting> {
    check_d(d)?;
    Ok(match d.rem_euclid(8) {
        5 => Splitting::Inert,
        1 => Splitting::Split,
        _ => Splitting::Ramified,
    })
}

pub fn splitting_of_3(d: i64) -> Result<Splitting> {
    check_d(d)?;
    Ok(match d.rem_euclid(3) {
        0 => Splitting::Ramified,
        1 => Splitting::Split,
        _ => Splitting::Inert,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    #[serde(rename = "D")]
    pub d: i64,
    pub split2: Splitting,
    pub split3: Splitting,
    /// Unramified primes over 2 with residue field `F2`.
    pub r1: u32,
    /// Ramified primes over 2 with residue field `F2`.
    pub r2: u32,
    /// Primes over 3 with residue field `F3`.
    pub q: u32,
    pub v: u32,
    pub improved_offset: u32,
}

pub fn v_profile(d: i64) -> Result<SplittingReport> {
    if d < 0 {
        if !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        return Err(Error::NegativeDiscriminant(d));
    }
    let split2 = splitting_of_2(d)?;
    let split3 = splitting_of_3(d)?;
    let (r1, r2) = match split2 {
        Splitting::Inert => (0, 0),
        Splitting::Ramified => (0, 1),
        Splitting::Split => (2, 0),
    };
    let q = match split3 {
        Splitting::Inert => 0,
        Splitting::Ramified => 1,
        Splitting::Split => 2,
    };
    Ok(SplittingReport {
        d,
        split2,
        split3,
        r1,
        r2,
        q,
        v: (2 * r2 + r1).max(q),
        improved_offset: r2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeltaVerdict {
    /// `Δ_k ≥ lower_bound`, and `≥ improved` under the sharpened `2k + r2` bound.
    LowerBound {
        lower_bound: u32,
        improved: u32,
    },
    MinusInfinity,
}

pub fn delta_verdict(d: i64, k: u32) -> Result<DeltaVerdict> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let rep = v_profile(d)?;
    Ok(if k >= rep.v {
        DeltaVerdict::LowerBound {
            lower_bound: 2 * k,
            improved: 2 * k + rep.r2,
        }
    } else {
        DeltaVerdict::MinusInfinity
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<SplittingReport>,
    /// Values in the range that are not square-free or not above 1.
    pub skipped: Vec<i64>,
    pub histogram: BTreeMap<u32, usize>,
}

pub fn scan_range(lo: i64, hi: i64) -> ScanReport {
    let results: Vec<(i64, Option<SplittingReport>)> =
        (lo..=hi).into_par_iter().map(|d| (d, v_profile(d).ok())).collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (d, rep) in results {
        match rep {
            Some(r) => rows.push(r),
            None => skipped.push(d),
        }
    }
    let mut histogram = BTreeMap::new();
    for r in &rows {
        *histogram.entry(r.v).or_insert(0) += 1;
    }
    ScanReport {
        rows,
        skipped,
        histogram,
    }
}

impl ScanReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("D\tsplit2\tsplit3\tr1\tr2\tq\tv\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.d, r.split2, r.split3, r.r1, r.r2, r.q, r.v
            ));
        }
        out
    }
}
