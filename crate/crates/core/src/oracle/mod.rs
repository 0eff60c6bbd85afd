//! Brute-force checks that share no code path with the recursions:
//! exhaustive reliability, the Taylor numerator, Alexander duality by
//! minimal transversals, and Betti numbers from simplicial homology.

mod homology;
mod transversal;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{BivarPoly, ExactRational, Term};
use crate::resolution::{BettiTable, HilbertNumerator};
use crate::tree::{
    enumerate_minimal_cuts, enumerate_path_generators, percolates_mask, TreeSpec,
    DEFAULT_ENUMERATION_CAP,
};

pub const RELIABILITY_EDGE_CAP: usize = 24;
pub const TAYLOR_GENERATOR_CAP: usize = 20;
pub const DUAL_VARIABLE_CAP: usize = 24;
pub const HOMOLOGY_VARIABLE_CAP: usize = 14;

/// A squarefree monomial ideal by its minimal generators, each a set of
/// variable indices stored as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSet {
    variables: Vec<String>,
    generators: Vec<u64>,
}

impl MonomialSet {
    /// Fails on unknown variable indices or if one generator divides another.
    pub fn new(variables: Vec<String>, generators: &[Vec<usize>]) -> Result<Self> {
        if variables.len() > 64 {
            return Err(Error::TooLarge {
                op: "MonomialSet",
                size: variables.len(),
                cap: 64,
            });
        }
        let mut masks = Vec::with_capacity(generators.len());
        for g in generators {
            let mut mask = 0u64;
            for &v in g {
                if v >= variables.len() {
                    return Err(Error::invalid(format!("variable index {v} out of range")));
                }
                mask |= 1 << v;
            }
            masks.push(mask);
        }
        Self::from_masks(variables, masks)
    }

    fn from_masks(variables: Vec<String>, mut masks: Vec<u64>) -> Result<Self> {
        masks.sort_unstable();
        masks.dedup();
        for (a, &ga) in masks.iter().enumerate() {
            for (b, &gb) in masks.iter().enumerate() {
                if a != b && ga & gb == ga {
                    return Err(Error::invalid(format!(
                        "generator {} divides {}",
                        render_mask(&variables, ga),
                        render_mask(&variables, gb)
                    )));
                }
            }
        }
        Ok(MonomialSet {
            variables,
            generators: masks,
        })
    }

    /// Generators by variable name, e.g. `[["x1", "x3"], ["x2"]]`.
    pub fn from_names(variables: &[&str], generators: &[&[&str]]) -> Result<Self> {
        let variables: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let indexed: Result<Vec<Vec<usize>>> = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|name| {
                        variables
                            .iter()
                            .position(|v| v == name)
                            .ok_or_else(|| Error::invalid(format!("unknown variable {name}")))
                    })
                    .collect()
            })
            .collect();
        Self::new(variables, &indexed?)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Generators as sorted variable-index lists.
    pub fn generators(&self) -> Vec<Vec<usize>> {
        self.generators
            .iter()
            .map(|&g| (0..64).filter(|v| g >> v & 1 == 1).collect())
            .collect()
    }

    pub(crate) fn masks(&self) -> &[u64] {
        &self.generators
    }
}

fn render_mask(variables: &[String], mask: u64) -> String {
    let names: Vec<&str> = (0..variables.len())
        .filter(|v| mask >> v & 1 == 1)
        .map(|v| variables[v].as_str())
        .collect();
    if names.is_empty() {
        "1".to_string()
    } else {
        names.join("*")
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|&g| render_mask(&self.variables, g))
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

fn tree_variables(spec: &TreeSpec) -> Result<Vec<String>> {
    if spec.edge_count() > 64 {
        return Err(Error::TooLarge {
            op: "tree ideal",
            size: spec.edge_count(),
            cap: 64,
        });
    }
    Ok((1..=spec.edge_count()).map(|l| format!("x{l}")).collect())
}

/// Path ideal `I_{k,n}` over variables `x1 .. xE`.
pub fn path_ideal(spec: &TreeSpec) -> Result<MonomialSet> {
    let variables = tree_variables(spec)?;
    let gens: Vec<Vec<usize>> = enumerate_path_generators(spec, DEFAULT_ENUMERATION_CAP)?
        .iter()
        .map(|p| p.labels(spec).into_iter().map(|l| l - 1).collect())
        .collect();
    MonomialSet::new(variables, &gens)
}

/// Cut ideal `J_{k,n}` over variables `x1 .. xE`.
pub fn cut_ideal(spec: &TreeSpec) -> Result<MonomialSet> {
    let variables = tree_variables(spec)?;
    let gens: Vec<Vec<usize>> = enumerate_minimal_cuts(spec, DEFAULT_ENUMERATION_CAP)?
        .iter()
        .map(|c| c.labels(spec).into_iter().map(|l| l - 1).collect())
        .collect();
    MonomialSet::new(variables, &gens)
}

/// Sum over all `2^E` edge states of the probability of the percolating
/// ones, grouped by the number of working edges.
pub fn reliability_exhaustive(spec: &TreeSpec, p: &ExactRational) -> Result<ExactRational> {
    crate::percolation::validate_probability(p)?;
    let edges = spec.edge_count();
    if edges > RELIABILITY_EDGE_CAP {
        return Err(Error::TooLarge {
            op: "reliability_exhaustive",
            size: edges,
            cap: RELIABILITY_EDGE_CAP,
        });
    }
    let mut counts = vec![0u64; edges + 1];
    for state in 0..(1u64 << edges) {
        if percolates_mask(spec, state) {
            counts[state.count_ones() as usize] += 1;
        }
    }
    let q = ExactRational::one() - p;
    let mut total = ExactRational::zero();
    for (w, &count) in counts.iter().enumerate() {
        if count > 0 {
            total += ExactRational::from_integer(count.into())
                * num_traits::pow(p.clone(), w)
                * num_traits::pow(q.clone(), edges - w);
        }
    }
    Ok(total)
}

/// Inclusion-exclusion numerator
/// `sum_{S nonempty} (-1)^{|S|+1} x^{|S|} t^{deg lcm S}`.
pub fn taylor_numerator(gens: &MonomialSet) -> Result<HilbertNumerator> {
    let masks = gens.masks();
    if masks.len() > TAYLOR_GENERATOR_CAP {
        return Err(Error::TooLarge {
            op: "taylor_numerator",
            size: masks.len(),
            cap: TAYLOR_GENERATOR_CAP,
        });
    }
    let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    fn walk(masks: &[u64], start: usize, size: u32, lcm: u64, acc: &mut BTreeMap<(u32, u32), i64>) {
        for i in start..masks.len() {
            let l = lcm | masks[i];
            let s = size + 1;
            *acc.entry((s, l.count_ones())).or_default() += if s % 2 == 1 { 1 } else { -1 };
            walk(masks, i + 1, s, l, acc);
        }
    }
    walk(masks, 0, 0, 0, &mut acc);
    Ok(HilbertNumerator::new(BivarPoly::from_terms(
        acc.into_iter().map(|((x, t), c)| Term::new(x, t, c)),
    )))
}

/// Squarefree Alexander dual: the minimal transversals of the generators.
pub fn alexander_dual(gens: &MonomialSet) -> Result<MonomialSet> {
    if gens.variables.len() > DUAL_VARIABLE_CAP {
        return Err(Error::TooLarge {
            op: "alexander_dual",
            size: gens.variables.len(),
            cap: DUAL_VARIABLE_CAP,
        });
    }
    MonomialSet::from_masks(
        gens.variables.clone(),
        transversal::minimal_transversals(gens.masks()),
    )
}

/// Reduced homology of `K^b` for one squarefree multidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultidegreeHomology {
    /// Variable indices of `b`.
    pub support: Vec<usize>,
    /// `(d, dim H~_d(K^b))` for the nonzero groups.
    pub reduced_betti: Vec<(i32, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplexHomologyReport {
    pub entries: Vec<MultidegreeHomology>,
}

impl SimplicialComplexHomologyReport {
    /// Graded `beta_{i,j}(S/I)` with `i = d + 2` and `j = |b|`.
    pub fn graded(&self) -> Result<BettiTable> {
        let mut acc: BTreeMap<(u32, u32), BigUint> = BTreeMap::new();
        for entry in &self.entries {
            for &(d, dim) in &entry.reduced_betti {
                let i = (d + 2) as u32;
                *acc.entry((i, entry.support.len() as u32)).or_default() += dim;
            }
        }
        BettiTable::from_entries(acc.into_iter().map(|((i, j), b)| (i, j, b)))
    }
}

/// Homology of the upper Koszul complex at every element of the lcm lattice;
/// other squarefree degrees give cones and contribute nothing.
pub fn homology_report(gens: &MonomialSet) -> Result<SimplicialComplexHomologyReport> {
    if gens.variables.len() > HOMOLOGY_VARIABLE_CAP {
        return Err(Error::TooLarge {
            op: "multigraded_betti_homology",
            size: gens.variables.len(),
            cap: HOMOLOGY_VARIABLE_CAP,
        });
    }
    let masks = gens.masks();
    let mut entries = Vec::new();
    for b in homology::lcm_lattice(masks) {
        let inside: Vec<u64> = masks.iter().copied().filter(|&g| g & b == g).collect();
        let dims = homology::upper_koszul_homology(&inside, b);
        let reduced_betti: Vec<(i32, usize)> = dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(idx, &d)| (idx as i32 - 1, d))
            .collect();
        if !reduced_betti.is_empty() {
            entries.push(MultidegreeHomology {
                support: (0..64).filter(|v| b >> v & 1 == 1).collect(),
                reduced_betti,
            });
        }
    }
    Ok(SimplicialComplexHomologyReport { entries })
}

pub fn multigraded_betti_homology(gens: &MonomialSet) -> Result<BettiTable> {
    homology_report(gens)?.graded()
}

/// The double-bridge network on vertices 1..5 with source 1 and target 5.
pub struct DoubleBridge;

impl DoubleBridge {
    pub const VARIABLES: [&'static str; 8] =
        ["x12", "x13", "x14", "x23", "x25", "x34", "x35", "x45"];

    /// The eight minimal cuts as listed with the example.
    pub fn cut_ideal() -> MonomialSet {
        MonomialSet::from_names(
            &Self::VARIABLES,
            &[
                &["x25", "x35", "x45"],
                &["x12", "x23", "x35", "x45"],
                &["x13", "x23", "x25", "x34", "x45"],
                &["x14", "x25", "x34", "x35"],
                &["x12", "x13", "x34", "x45"],
                &["x12", "x14", "x23", "x34", "x35"],
                &["x13", "x14", "x23", "x25"],
                &["x12", "x13", "x14"],
            ],
        )
        .expect("fixture is a clutter")
    }

    /// The nine simple paths from 1 to 5.
    pub fn path_ideal() -> MonomialSet {
        MonomialSet::from_names(
            &Self::VARIABLES,
            &[
                &["x12", "x25"],
                &["x13", "x35"],
                &["x14", "x45"],
                &["x12", "x23", "x35"],
                &["x13", "x23", "x25"],
                &["x13", "x34", "x45"],
                &["x14", "x34", "x35"],
                &["x12", "x23", "x34", "x45"],
                &["x14", "x34", "x23", "x25"],
            ],
        )
        .expect("fixture is a clutter")
    }
}
