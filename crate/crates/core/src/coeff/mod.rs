//! Coefficient tables `c^[r,p]_j` for the higher-order relations, in the
//! sl2 and simply-laced (ADE) flavors, each computable by three routes:
//! the closed-form conjecture sum, the two-variable generating polynomial,
//! and the order-by-order recursion. The routes are independent; their
//! exact agreement is the backbone of the verification suite.

pub mod ade;
pub mod sl2;

use crate::qring::LaurentQ;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Which relation family a table belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Sl2,
    Ade,
}

/// How a table was computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Conjecture,
    GenPoly,
    Recursion,
}

/// Triangular array `{c^[r,p]_j}` for one fixed order `r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoeffTable {
    pub r: u32,
    pub flavor: Flavor,
    pub provenance: Provenance,
    entries: BTreeMap<(u32, u32), LaurentQ>,
}

impl CoeffTable {
    pub fn new(r: u32, flavor: Flavor, provenance: Provenance) -> Self {
        Self {
            r,
            flavor,
            provenance,
            entries: BTreeMap::new(),
        }
    }

    /// Largest `p` for this flavor and order.
    pub fn pmax(&self) -> u32 {
        match self.flavor {
            Flavor::Sl2 => self.r,
            Flavor::Ade => (self.r + 1) / 2,
        }
    }

    /// Largest index `j` in row `p`.
    pub fn jmax(&self, p: u32) -> u32 {
        match self.flavor {
            Flavor::Sl2 => 2 * (self.r - p) + 1,
            Flavor::Ade => self.r + 1 - 2 * p,
        }
    }

    pub fn set(&mut self, p: u32, j: u32, c: LaurentQ) {
        debug_assert!(p <= self.pmax() && j <= self.jmax(p), "index out of range");
        self.entries.insert((p, j), c);
    }

    pub fn get(&self, p: u32, j: u32) -> &LaurentQ {
        self.entries
            .get(&(p, j))
            .unwrap_or_else(|| panic!("missing entry (r={}, p={p}, j={j})", self.r))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &LaurentQ)> {
        self.entries.iter()
    }

    /// Completeness: every in-range `(p, j)` is present.
    pub fn is_complete(&self) -> bool {
        for p in 0..=self.pmax() {
            for j in 0..=self.jmax(p) {
                if !self.entries.contains_key(&(p, j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Row reflection symmetry `c_j = c_{jmax - j}`.
    pub fn is_symmetric(&self) -> bool {
        for ((p, j), c) in &self.entries {
            if self.get(*p, self.jmax(*p) - j) != c {
                return false;
            }
        }
        true
    }

    /// Entrywise equality against another table (provenance ignored).
    pub fn agrees_with(&self, other: &CoeffTable) -> bool {
        self.r == other.r && self.flavor == other.flavor && self.entries == other.entries
    }

    /// First differing index against another table, for diagnostics.
    pub fn first_mismatch(&self, other: &CoeffTable) -> Option<(u32, u32)> {
        for p in 0..=self.pmax() {
            for j in 0..=self.jmax(p) {
                if self.entries.get(&(p, j)) != other.entries.get(&(p, j)) {
                    return Some((p, j));
                }
            }
        }
        None
    }

    /// JSON export: `{"flavor", "r", "provenance", "rows": [{"p", "c": [...]}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..=self.pmax())
            .map(|p| {
                let cs: Vec<serde_json::Value> =
                    (0..=self.jmax(p)).map(|j| self.get(p, j).to_json()).collect();
                serde_json::json!({"p": p, "c": cs})
            })
            .collect();
        serde_json::json!({
            "flavor": match self.flavor { Flavor::Sl2 => "sl2", Flavor::Ade => "ade" },
            "r": self.r,
            "provenance": match self.provenance {
                Provenance::Conjecture => "conjecture",
                Provenance::GenPoly => "genpoly",
                Provenance::Recursion => "recursion",
            },
            "rows": rows,
        })
    }

    /// CSV export with stringified polynomials, one `(p, j)` entry per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,p,j,c\n");
        for ((p, j), c) in &self.entries {
            let _ = writeln!(out, "{},{},{},\"{}\"", self.r, p, j, c);
        }
        out
    }
}
