//! Self-checks against the brute-force oracle and the DAG invariants.
//!
//! Two families of checks:
//!
//! * oracle equivalence: for every n up to `n_max` and every seed, each
//!   variant run with `k = 2^n - 1` must report the oracle's sums in order,
//!   every subset exactly once, and sums that match their subsets;
//! * structure, for n up to 10: every node of the final DAG has at most two
//!   children, every non-root node exactly one parent, every non-empty
//!   subset appears, cursor-only nodes carry the cursors of their implied
//!   pattern, and cursor-only and bit-pattern nodes have the same children.
//!
//! [`Fault`] swaps in a deliberately broken child rule for the cursor-only
//! enumerator, to show that the checks catch it.

use std::collections::HashSet;
use std::fmt;

use crate::bench::{gen_instance, Distribution};
use crate::dag::{
    compact_children, final_dag_children, BitNode, Children, CompactNode, CompactRule, EdgeType,
    FinalDag,
};
use crate::dot::walk;
use crate::enumerate::{subset_count, topk, OnDemandCompact, Variant};
use crate::input::InputSet;
use crate::oracle::topk_oracle;
use crate::ranked::{expand_deltas, RankedSubset};
use crate::subset::{cursors_from_bits, BitPattern, SubsetPositions};
use crate::weight::Weight;

/// Largest n accepted for oracle checks.
pub const VERIFY_MAX_N: usize = 16;
/// Largest n for the structural checks.
pub const STRUCTURE_MAX_N: usize = 10;

/// Value range of verification instances.
pub const VERIFY_DISTRIBUTION: Distribution = Distribution::UniformInt { lo: 1, hi: 1000 };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Type2 children get `gap_head` one past the moved element.
    Type2CursorOffByOne,
}

impl Fault {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "type2-cursor" => Some(Fault::Type2CursorOffByOne),
            _ => None,
        }
    }
}

/// Child rule with an injected fault.
#[derive(Clone, Copy, Debug)]
pub struct FaultyRule(pub Fault);

impl<W: Weight> CompactRule<W> for FaultyRule {
    fn children(
        &self,
        node: &CompactNode<W>,
        parent_rank: u64,
        input: &InputSet<W>,
    ) -> Children<CompactNode<W>> {
        let mut kids = compact_children(node, parent_rank, input);
        match self.0 {
            Fault::Type2CursorOffByOne => {
                for (child, edge) in kids.iter_mut() {
                    if *edge == EdgeType::Type2 {
                        child.cursors.gap_head += 1;
                    }
                }
            }
        }
        kids
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub n_max: usize,
    /// Seeds `0..seeds` are used for every n.
    pub seeds: u64,
    pub variants: Vec<Variant>,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 12,
            seeds: 25,
            variants: Variant::ALL.to_vec(),
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub seed: Option<u64>,
    pub k: u64,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        write!(f, " k={}: {}", self.k, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status}  {:<width$}  {:>8} cases", c.name, c.cases)?;
            if let Some(ce) = &c.counterexample {
                write!(f, "  first counterexample: {ce}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerifyError {
    NMaxOutOfRange(usize),
    NoSeeds,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::NMaxOutOfRange(n) => {
                write!(f, "n-max must be in 1..={VERIFY_MAX_N}, got {n}")
            }
            VerifyError::NoSeeds => write!(f, "at least one seed is required"),
        }
    }
}

impl std::error::Error for VerifyError {}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    if cfg.n_max == 0 || cfg.n_max > VERIFY_MAX_N {
        return Err(VerifyError::NMaxOutOfRange(cfg.n_max));
    }
    if cfg.seeds == 0 {
        return Err(VerifyError::NoSeeds);
    }
    let mut checks = Vec::new();
    for &variant in &cfg.variants {
        checks.push(oracle_check(cfg, variant));
    }
    let n_struct = cfg.n_max.min(STRUCTURE_MAX_N);
    checks.extend(structure_checks(n_struct));
    match cfg.fault {
        Some(fault) => checks.extend(compact_rule_checks(n_struct, &FaultyRule(fault))),
        None => checks.extend(compact_rule_checks(n_struct, &FinalDag)),
    }
    Ok(VerifyReport { checks })
}

fn oracle_check(cfg: &VerifyConfig, variant: Variant) -> CheckResult {
    let mut result = CheckResult {
        name: format!("oracle/{}", variant.label()),
        cases: 0,
        counterexample: None,
    };
    for n in 1..=cfg.n_max {
        for seed in 0..cfg.seeds {
            let input = gen_instance(n, seed, VERIFY_DISTRIBUTION).expect("valid distribution");
            let k = subset_count(n);
            result.cases += 1;
            let outcome = match (variant, cfg.fault) {
                (Variant::OnDemandCompact, Some(fault)) => {
                    let e =
                        OnDemandCompact::with_rule(&input, k, FaultyRule(fault)).expect("k >= 1");
                    compare_to_oracle(&input, k, expand_deltas(e))
                }
                (Variant::OnDemandCompact, None) => compare_to_oracle(
                    &input,
                    k,
                    expand_deltas(topk(&input, k, variant).expect("k >= 1")),
                ),
                _ => compare_to_oracle(
                    &input,
                    k,
                    topk(&input, k, variant)
                        .expect("k >= 1")
                        .map(Ok::<_, String>),
                ),
            };
            if let Err(detail) = outcome {
                result.counterexample = Some(Counterexample {
                    n,
                    seed: Some(seed),
                    k,
                    detail,
                });
                return result;
            }
        }
    }
    result
}

/// Compares a stream of records to the oracle's top k.
pub fn compare_to_oracle<W, E, I>(input: &InputSet<W>, k: u64, stream: I) -> Result<(), String>
where
    W: Weight,
    E: fmt::Display,
    I: Iterator<Item = Result<RankedSubset<W>, E>>,
{
    let expect = topk_oracle(input, k).map_err(|e| e.to_string())?;
    let mut seen = HashSet::new();
    let mut count = 0usize;
    for (i, record) in stream.enumerate() {
        let record = record.map_err(|e| format!("record {}: {e}", i + 1))?;
        let Some(want) = expect.get(i) else {
            return Err(format!("more than {} records", expect.len()));
        };
        if !W::approx_eq(record.sum, want.sum) {
            return Err(format!(
                "rank {}: sum {} but oracle has {}",
                i + 1,
                record.sum,
                want.sum
            ));
        }
        let positions = record
            .positions
            .ok_or_else(|| format!("rank {}: no positions", i + 1))?;
        if positions.is_empty() || positions.last() > input.len() {
            return Err(format!("rank {}: bad subset {{{positions}}}", i + 1));
        }
        let actual = input.sum_of(positions.as_slice());
        if !W::approx_eq(actual, record.sum) {
            return Err(format!(
                "rank {}: {{{positions}}} sums to {actual}, reported {}",
                i + 1,
                record.sum
            ));
        }
        if !seen.insert(positions.clone()) {
            return Err(format!("rank {}: {{{positions}}} reported twice", i + 1));
        }
        count += 1;
    }
    if count != expect.len() {
        return Err(format!("{count} records, oracle has {}", expect.len()));
    }
    Ok(())
}

fn structure_checks(n_max: usize) -> Vec<CheckResult> {
    let mut out_degree = CheckResult {
        name: "dag/at-most-two-children".into(),
        cases: 0,
        counterexample: None,
    };
    let mut one_parent = CheckResult {
        name: "dag/one-parent".into(),
        cases: 0,
        counterexample: None,
    };
    let mut coverage = CheckResult {
        name: "dag/covers-all-subsets".into(),
        cases: 0,
        counterexample: None,
    };
    for n in 1..=n_max {
        let listing = walk(n);
        let k = subset_count(n);
        let fail = |detail: String| {
            Some(Counterexample {
                n,
                seed: None,
                k,
                detail,
            })
        };
        out_degree.cases += 1;
        one_parent.cases += 1;
        coverage.cases += 1;
        if out_degree.passed() {
            if let Some((i, d)) = listing
                .out_degrees()
                .into_iter()
                .enumerate()
                .find(|&(_, d)| d > 2)
            {
                out_degree.counterexample = fail(format!("{} has {d} children", listing.nodes[i]));
            }
        }
        if one_parent.passed() {
            let indeg = listing.in_degrees();
            if indeg[0] != 0 {
                one_parent.counterexample = fail("root has a parent".into());
            } else if let Some((i, d)) = indeg.iter().enumerate().skip(1).find(|&(_, &d)| d != 1) {
                one_parent.counterexample = fail(format!("{} has {d} parents", listing.nodes[i]));
            }
        }
        if coverage.passed() && listing.nodes.len() as u64 != k {
            coverage.counterexample =
                fail(format!("{} of {k} subsets reached", listing.nodes.len()));
        }
    }
    vec![out_degree, one_parent, coverage]
}

/// Walks the cursor-only DAG with `rule`, tracking each node's pattern
/// through its deltas, and compares against scans and the bit rule.
fn compact_rule_checks<R: CompactRule<i64>>(n_max: usize, rule: &R) -> Vec<CheckResult> {
    let mut cursors = CheckResult {
        name: "compact/cursors-match-pattern".into(),
        cases: 0,
        counterexample: None,
    };
    let mut agree = CheckResult {
        name: "compact/children-match-bitvec".into(),
        cases: 0,
        counterexample: None,
    };
    for n in 1..=n_max {
        let input = InputSet::new((1..=n as i64).collect()).expect("small positive values");
        let k = subset_count(n);
        cursors.cases += 1;
        agree.cases += 1;
        let root = CompactNode::root(&input);
        let mut root_bits = BitPattern::zeros(n);
        root_bits.set(1, true);
        let mut stack = vec![(root, root_bits)];
        // Guards against faulty rules that loop; a correct walk visits 2^n - 1 nodes.
        let mut budget = 4 * k;
        while let Some((node, bits)) = stack.pop() {
            if budget == 0 {
                break;
            }
            budget -= 1;
            let scanned = cursors_from_bits(&bits).expect("non-empty pattern");
            if cursors.passed() && scanned != node.cursors {
                cursors.counterexample = Some(Counterexample {
                    n,
                    seed: None,
                    k,
                    detail: format!(
                        "{bits}: cursors {:?}, scan gives {:?}",
                        node.cursors.tuple(),
                        scanned.tuple()
                    ),
                });
            }
            let bit_node = BitNode {
                bits: bits.clone(),
                size: node.size,
                sum: node.sum,
                gap_head: scanned.gap_head,
                prefix_end: scanned.prefix_end,
                last: scanned.last,
            };
            let expected: Vec<(BitPattern, EdgeType)> = final_dag_children(&bit_node, &input)
                .into_iter()
                .map(|(c, e)| (c.bits, e))
                .collect();
            let mut produced = Vec::new();
            for (child, edge) in rule.children(&node, 1, &input) {
                let mut child_bits = bits.clone();
                if child.removed != 0 {
                    child_bits.set(child.removed as usize, false);
                }
                if child.added != 0 {
                    child_bits.set(child.added as usize, true);
                }
                produced.push((child_bits.clone(), edge));
                stack.push((child, child_bits));
            }
            if agree.passed() && produced != expected {
                let show = |v: &[(BitPattern, EdgeType)]| {
                    v.iter()
                        .map(|(b, e)| format!("{e}:{b}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                agree.counterexample = Some(Counterexample {
                    n,
                    seed: None,
                    k,
                    detail: format!(
                        "{bits}: compact gives [{}], bitvec gives [{}]",
                        show(&produced),
                        show(&expected)
                    ),
                });
            }
        }
    }
    vec![cursors, agree]
}

/// True when `positions` is the binary expansion of `rank` (bit b is
/// position b + 1).
pub fn is_binary_of(rank: u64, positions: &SubsetPositions) -> bool {
    let expect: Vec<usize> = (0..64)
        .filter(|b| rank >> b & 1 == 1)
        .map(|b| b as usize + 1)
        .collect();
    positions.as_slice() == expect.as_slice()
}
