//! Published parameter tables for `q = 2, n = 5`, shipped as CSV fixtures
//! under `crates/core/data/`, and a report of every cell where they differ
//! from what this crate computes.
//!
//! The fixtures are verbatim transcriptions, typos included. The quantum
//! table contains one parametric row (`l0 + i`, `d0 + i`, `s_max0 - i`);
//! it is stored as its `i = 0` instance with `parametric = 1`.

use serde::Serialize;

use crate::error::Result;
use crate::fengrao;
use crate::gk2::{weierstrass, Orbit};
use crate::params::CurveParams;
use crate::quantum;

pub const FENG_RAO_CSV: &str = include_str!("../data/feng_rao_q2_n5.csv");
pub const QUANTUM_CSV: &str = include_str!("../data/quantum_q2_n5.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FengRaoCell {
    pub orbit: Orbit,
    pub table: u32,
    /// The length column as printed.
    pub length_cell: u64,
    pub k: u64,
    pub rho: u64,
    pub nu: u64,
    pub d_ord: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuantumCell {
    pub orbit: Orbit,
    pub table: u32,
    pub l: u64,
    pub d_ord: u64,
    pub s_min: i64,
    pub s_max: i64,
    pub parametric: bool,
}

fn records(csv: &str) -> impl Iterator<Item = Vec<&str>> {
    csv.lines()
        .skip(1)
        .filter(|line| !line.trim().is_empty())
        .map(|line| line.split(',').map(str::trim).collect())
}

fn num<T: std::str::FromStr>(field: &str) -> T {
    field
        .parse()
        .unwrap_or_else(|_| panic!("bad number {field:?} in fixture"))
}

pub fn feng_rao_cells() -> Vec<FengRaoCell> {
    records(FENG_RAO_CSV)
        .map(|f| FengRaoCell {
            orbit: f[0].parse().expect("orbit"),
            table: num(f[1]),
            length_cell: num(f[2]),
            k: num(f[3]),
            rho: num(f[4]),
            nu: num(f[5]),
            d_ord: num(f[6]),
        })
        .collect()
}

pub fn quantum_cells() -> Vec<QuantumCell> {
    records(QUANTUM_CSV)
        .map(|f| QuantumCell {
            orbit: f[0].parse().expect("orbit"),
            table: num(f[1]),
            l: num(f[2]),
            d_ord: num(f[3]),
            s_min: num(f[4]),
            s_max: num(f[5]),
            parametric: f[6] == "1",
        })
        .collect()
}

/// The published row for `(orbit, l)`: an explicit row if one exists,
/// else the parametric row expanded at `i = l - l0`.
pub fn quantum_row(orbit: Orbit, l: u64) -> Option<QuantumCell> {
    let cells = quantum_cells();
    if let Some(cell) = cells
        .iter()
        .find(|c| c.orbit == orbit && c.l == l && !c.parametric)
    {
        return Some(*cell);
    }
    cells
        .iter()
        .find(|c| c.orbit == orbit && c.parametric && c.l <= l)
        .map(|c| {
            let i = l - c.l;
            QuantumCell {
                l,
                d_ord: c.d_ord + i,
                s_max: c.s_max - i as i64,
                ..*c
            }
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub table: u32,
    pub orbit: Orbit,
    /// `"rho"` for the Feng–Rao tables, `"l"` for the quantum tables.
    pub key: &'static str,
    pub key_value: u64,
    pub column: &'static str,
    pub published: String,
    pub computed: String,
    /// True for cells of the expanded parametric row (`i >= 1`).
    pub parametric: bool,
}

/// Compares every fixture cell against a fresh computation for `q = 2, n = 5`.
/// The parametric quantum row is checked for every `l` it covers up to
/// `3g - 1`.
pub fn discrepancy_report() -> Result<Vec<Discrepancy>> {
    let params = CurveParams::new(2, 5)?;
    let length = params.code_length();
    let mut out = Vec::new();

    for orbit in [Orbit::O1, Orbit::O2] {
        let semigroup = weierstrass(&params, orbit)?;

        for cell in feng_rao_cells().into_iter().filter(|c| c.orbit == orbit) {
            let mut push = |column, published: u64, computed: String| {
                out.push(Discrepancy {
                    table: cell.table,
                    orbit,
                    key: "rho",
                    key_value: cell.rho,
                    column,
                    published: published.to_string(),
                    computed,
                    parametric: false,
                })
            };
            if cell.length_cell != length {
                push("N", cell.length_cell, length.to_string());
            }
            let Some(l) = semigroup.index_of(cell.rho) else {
                push("rho_l", cell.rho, "gap".into());
                continue;
            };
            let row = fengrao::row(&semigroup, length, l)?;
            if row.dim != cell.k {
                push("k", cell.k, row.dim.to_string());
            }
            if row.nu != cell.nu {
                push("nu_l", cell.nu, row.nu.to_string());
            }
            if row.d_ord != cell.d_ord {
                push("d_ord", cell.d_ord, row.d_ord.to_string());
            }
        }

        let last = 3 * params.genus - 1;
        for cell in quantum_cells().into_iter().filter(|c| c.orbit == orbit) {
            let ls: Vec<u64> = if cell.parametric {
                (cell.l + 1..=last).collect()
            } else {
                vec![cell.l]
            };
            for l in ls {
                let published = quantum_row(orbit, l).expect("row exists");
                let computed = quantum::range(&params, &semigroup, l)?;
                let mut push = |column, published: String, computed: String| {
                    out.push(Discrepancy {
                        table: cell.table,
                        orbit,
                        key: "l",
                        key_value: l,
                        column,
                        published,
                        computed,
                        parametric: cell.parametric,
                    })
                };
                if published.d_ord != computed.d_floor {
                    push(
                        "d_ord",
                        published.d_ord.to_string(),
                        computed.d_floor.to_string(),
                    );
                }
                if published.s_min != computed.s_min {
                    push(
                        "s_min",
                        published.s_min.to_string(),
                        computed.s_min.to_string(),
                    );
                }
                if published.s_max != computed.s_max {
                    push(
                        "s_max",
                        published.s_max.to_string(),
                        computed.s_max.to_string(),
                    );
                }
            }
        }
    }
    Ok(out)
}
