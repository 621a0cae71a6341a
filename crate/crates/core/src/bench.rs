//! Reproducible instances, timed runs and CSV output.
//!
//! Instances come from SplitMix64 (Steele, Lea and Flood), which is easy to
//! reimplement bit-for-bit in any language:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! A value in `lo..=hi` is drawn by rejection: with `span = hi - lo + 1`,
//! outputs below `2^64 mod span` are discarded and `lo + x mod span` is
//! returned. Instances are sorted after generation.

use std::error::Error;
use std::fmt;
use std::io::{self, Write};

use crate::enumerate::{drain, topk, Variant};
use crate::input::InputSet;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `lo..=hi`. Requires `lo <= hi`.
    pub fn uniform(&mut self, lo: u64, hi: u64) -> u64 {
        let span = (hi - lo).wrapping_add(1);
        if span == 0 {
            return self.next_u64();
        }
        let threshold = span.wrapping_neg() % span;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return lo + x % span;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution {
    UniformInt { lo: i64, hi: i64 },
}

impl Default for Distribution {
    fn default() -> Self {
        Distribution::UniformInt {
            lo: 1,
            hi: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BenchError {
    InvalidBounds { lo: i64, hi: i64 },
    EmptyInstance,
    ZeroK,
    Overflow,
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::InvalidBounds { lo, hi } => {
                write!(f, "invalid bounds {lo}..={hi}: need 0 <= lo <= hi")
            }
            BenchError::EmptyInstance => write!(f, "n must be at least 1"),
            BenchError::ZeroK => write!(f, "k must be at least 1"),
            BenchError::Overflow => write!(f, "n * hi does not fit in 64 bits"),
        }
    }
}

impl Error for BenchError {}

/// Generates `n` values from `distribution`, deterministically in `seed`.
pub fn gen_instance(
    n: usize,
    seed: u64,
    distribution: Distribution,
) -> Result<InputSet<i64>, BenchError> {
    let Distribution::UniformInt { lo, hi } = distribution;
    if lo < 0 || lo > hi {
        return Err(BenchError::InvalidBounds { lo, hi });
    }
    if n == 0 {
        return Err(BenchError::EmptyInstance);
    }
    let mut rng = SplitMix64::new(seed);
    let values = (0..n)
        .map(|_| rng.uniform(lo as u64, hi as u64) as i64)
        .collect();
    InputSet::new(values).map_err(|_| BenchError::Overflow)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub k_list: Vec<u64>,
    pub variants: Vec<Variant>,
    pub seed: u64,
    pub distribution: Distribution,
    /// Each repetition uses a fresh instance seeded with `seed + rep`.
    pub repetitions: u32,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.n_list.contains(&0) {
            return Err(BenchError::EmptyInstance);
        }
        if self.k_list.contains(&0) {
            return Err(BenchError::ZeroK);
        }
        let Distribution::UniformInt { lo, hi } = self.distribution;
        if lo < 0 || lo > hi {
            return Err(BenchError::InvalidBounds { lo, hi });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub k: u64,
    pub variant: String,
    pub seed: u64,
    pub elapsed_ns: u128,
    pub total_insertions: u64,
    pub peak_size: u64,
    pub reported_count: u64,
}

/// Times one full run that consumes only the sums.
pub fn run_one(input: &InputSet<i64>, k: u64, variant: Variant, seed: u64) -> BenchRow {
    let e = topk(input, k, variant).expect("k validated by caller");
    let mut checksum = 0i64;
    let summary = drain(e, |s| checksum = checksum.wrapping_add(s.sum));
    std::hint::black_box(checksum);
    BenchRow {
        n: input.len(),
        k,
        variant: variant.label(),
        seed,
        elapsed_ns: summary.metrics.elapsed.as_nanos(),
        total_insertions: summary.metrics.total_insertions,
        peak_size: summary.metrics.peak_size,
        reported_count: summary.reported,
    }
}

/// One row per (n, k, variant, repetition), sorted by (n, k, variant, seed).
///
/// Runs happen one at a time on the calling thread. Instance generation is
/// outside the timed region.
pub fn run_matrix(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for &n in &cfg.n_list {
        for rep in 0..cfg.repetitions {
            let seed = cfg.seed.wrapping_add(rep as u64);
            let input = gen_instance(n, seed, cfg.distribution)?;
            for &k in &cfg.k_list {
                for &variant in &cfg.variants {
                    rows.push(run_one(&input, k, variant, seed));
                }
            }
        }
    }
    sort_rows(&mut rows);
    Ok(rows)
}

fn sort_rows(rows: &mut [BenchRow]) {
    rows.sort_by(|a, b| (a.n, a.k, &a.variant, a.seed).cmp(&(b.n, b.k, &b.variant, b.seed)));
}

pub const CSV_HEADER: [&str; 8] = [
    "n",
    "k",
    "variant",
    "seed",
    "elapsed_ns",
    "total_insertions",
    "peak_size",
    "reported_count",
];

/// Writes the header and one line per row, sorted by (n, k, variant, seed).
pub fn emit_csv<W: Write>(rows: &[BenchRow], out: W) -> io::Result<()> {
    let mut sorted = rows.to_vec();
    sort_rows(&mut sorted);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &sorted {
        w.write_record([
            r.n.to_string(),
            r.k.to_string(),
            r.variant.clone(),
            r.seed.to_string(),
            r.elapsed_ns.to_string(),
            r.total_insertions.to_string(),
            r.peak_size.to_string(),
            r.reported_count.to_string(),
        ])?;
    }
    w.flush()
}

/// Median over repetitions of one (n, k, variant) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub k: u64,
    pub variant: String,
    pub median_elapsed_ns: u128,
    pub median_total_insertions: u64,
    pub median_peak_size: u64,
    pub repetitions: usize,
}

fn median<T: Copy + Ord>(mut xs: Vec<T>) -> T {
    xs.sort();
    xs[(xs.len() - 1) / 2]
}

/// Groups rows by (n, k, variant) and takes lower medians.
pub fn summarize(rows: &[BenchRow]) -> Vec<CellSummary> {
    let mut sorted = rows.to_vec();
    sort_rows(&mut sorted);
    let mut out = Vec::new();
    for cell in sorted.chunk_by(|a, b| (a.n, a.k, &a.variant) == (b.n, b.k, &b.variant)) {
        out.push(CellSummary {
            n: cell[0].n,
            k: cell[0].k,
            variant: cell[0].variant.clone(),
            median_elapsed_ns: median(cell.iter().map(|r| r.elapsed_ns).collect()),
            median_total_insertions: median(cell.iter().map(|r| r.total_insertions).collect()),
            median_peak_size: median(cell.iter().map(|r| r.peak_size).collect()),
            repetitions: cell.len(),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0, from the published reference code
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn uniform_stays_in_range() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..10_000 {
            let x = rng.uniform(3, 9);
            assert!((3..=9).contains(&x));
        }
        assert_eq!(rng.uniform(5, 5), 5);
    }

    #[test]
    fn instances_are_deterministic() {
        let d = Distribution::UniformInt {
            lo: 1,
            hi: 1_000_000,
        };
        let a = gen_instance(100, 42, d).unwrap();
        let b = gen_instance(100, 42, d).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        assert!(a.values().iter().all(|v| (1..=1_000_000).contains(v)));
        assert!(a.values().windows(2).all(|w| w[0] <= w[1]));
        let c = gen_instance(100, 43, d).unwrap();
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn invalid_bounds() {
        assert_eq!(
            gen_instance(5, 0, Distribution::UniformInt { lo: 5, hi: 4 }),
            Err(BenchError::InvalidBounds { lo: 5, hi: 4 })
        );
        assert!(gen_instance(5, 0, Distribution::UniformInt { lo: -1, hi: 4 }).is_err());
    }

    fn row(n: usize, variant: &str, seed: u64) -> BenchRow {
        BenchRow {
            n,
            k: 10,
            variant: variant.into(),
            seed,
            elapsed_ns: 100,
            total_insertions: 21,
            peak_size: 11,
            reported_count: 10,
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        let mut buf = Vec::new();
        emit_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,k,variant,seed,elapsed_ns,total_insertions,peak_size,reported_count\n"
        );
    }

    #[test]
    fn csv_is_sorted_and_stable() {
        let rows = vec![
            row(200, "compact", 1),
            row(100, "compact", 2),
            row(100, "baseline", 2),
            row(100, "compact", 1),
        ];
        let mut a = Vec::new();
        emit_csv(&rows, &mut a).unwrap();
        let mut b = Vec::new();
        emit_csv(&rows, &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines.iter().all(|l| l.split(',').count() == 8));
        assert!(lines[1].starts_with("100,10,baseline,2"));
        assert!(lines[2].starts_with("100,10,compact,1"));
        assert!(lines[3].starts_with("100,10,compact,2"));
        assert!(lines[4].starts_with("200,10,compact,1"));
    }

    #[test]
    fn matrix_shape_and_medians() {
        let cfg = BenchConfig {
            n_list: vec![30],
            k_list: vec![50],
            variants: vec![Variant::Baseline, Variant::OnDemandCompact],
            seed: 9,
            distribution: Distribution::default(),
            repetitions: 3,
        };
        let rows = run_matrix(&cfg).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.reported_count == 50));
        let cells = summarize(&rows);
        assert_eq!(cells.len(), 2);
        assert!(cells.iter().all(|c| c.repetitions == 3));
        let base = cells.iter().find(|c| c.variant == "baseline").unwrap();
        let compact = cells.iter().find(|c| c.variant == "compact").unwrap();
        assert!(compact.median_total_insertions < base.median_total_insertions);
    }

    #[test]
    fn rejects_zero_k() {
        let cfg = BenchConfig {
            n_list: vec![10],
            k_list: vec![0],
            variants: vec![Variant::Baseline],
            seed: 0,
            distribution: Distribution::default(),
            repetitions: 1,
        };
        assert_eq!(run_matrix(&cfg), Err(BenchError::ZeroK));
    }
}
