//! Timings for decorating fields and embedding into them.

use std::time::Instant;

use crate::arith::numtheory::order_mod;
use crate::error::Result;
use crate::lattice::StdLattice;
use crate::standard::valid_degree;

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub ell: usize,
    pub level: u32,
    pub decorate_seconds: f64,
    /// Source degree of the timed embedding.
    pub embed_from: usize,
    pub embed_seconds: f64,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str = "l,level,decorate_seconds,embed_seconds";

    pub fn to_csv(&self) -> String {
        format!("{},{},{:.6},{:.6}", self.ell, self.level, self.decorate_seconds, self.embed_seconds)
    }
}

/// Degrees `l <= max` coprime to `p` whose level passes `level_ok`.
pub fn reachable_degrees(p: u64, max: usize, level_ok: impl Fn(u32) -> bool) -> Vec<usize> {
    (1..=max)
        .filter(|&l| valid_degree(p, l as u64) && order_mod(p, l as u64).is_ok_and(&level_ok))
        .collect()
}

/// Degrees `l <= max` whose level has an entry in the lattice's table.
pub fn table_degrees(lattice: &StdLattice, max: usize) -> Vec<usize> {
    let table = lattice.cyclo().table();
    reachable_degrees(lattice.characteristic().get(), max, |a| table.get(a).is_some())
}

/// Decorates each degree in turn and times the embedding from the
/// smallest divisor `d > 1` of `l` (`d = l` for prime `l`, `d = 1` for
/// `l = 1`), which is registered first when missing.
pub fn run(lattice: &StdLattice, degrees: &[usize], mut on_row: impl FnMut(&BenchRow)) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(degrees.len());
    for &ell in degrees {
        let start = Instant::now();
        let d = lattice.add_field(ell, None)?;
        let decorate_seconds = start.elapsed().as_secs_f64();
        let from = (2..=ell).find(|k| ell % k == 0).unwrap_or(1);
        lattice.add_field(from, None)?;
        let start = Instant::now();
        lattice.get_embedding(from, ell)?;
        let embed_seconds = start.elapsed().as_secs_f64();
        let row = BenchRow { ell, level: d.level() as u32, decorate_seconds, embed_from: from, embed_seconds };
        on_row(&row);
        rows.push(row);
    }
    Ok(rows)
}
