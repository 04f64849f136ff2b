//! Brute-force certification of automorphism counts and subgroup structure,
//! independent of the closed forms.
//!
//! Candidates `(x1, y1, x2, y2)` are checked against the defining relations
//! and for generation. Automorphisms are keyed by their generator images, and
//! closures compose by substitution ([`hom::compose_images`]).

use std::collections::{BTreeSet, HashMap};
use std::io::Write;

use rayon::prelude::*;

use crate::aut::Automorphism;
use crate::error::{Error, Result};
use crate::group::{Element, GroupParams};
use crate::hom::{self, GenImages};
use crate::structure::{self, Subgroup};
use crate::word::Word;

/// Default cap on the candidate-space exponent `2(a+b)`.
pub const DEFAULT_MAX_BITS: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Cap on `2(a+b)` for enumeration and on `log2` of closure sizes.
    pub max_bits: u32,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            max_bits: DEFAULT_MAX_BITS,
            jobs: None,
        }
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Reusable bitmap closure, one per worker.
struct Generation {
    seen: Vec<u64>,
    stack: Vec<Element>,
}

impl Generation {
    fn new(p: &GroupParams) -> Self {
        let n = 1usize << p.order_bits();
        Generation {
            seen: vec![0; n.div_ceil(64)],
            stack: Vec::new(),
        }
    }

    fn generates_all(&mut self, gens: [Element; 2], p: &GroupParams) -> bool {
        self.seen.iter_mut().for_each(|w| *w = 0);
        self.stack.clear();
        let target = 1u64 << p.order_bits();
        let seen = &mut self.seen;
        let mut mark = |g: Element| {
            let i = p.index_of(g);
            let bit = 1u64 << (i % 64);
            let fresh = seen[i / 64] & bit == 0;
            seen[i / 64] |= bit;
            fresh
        };
        mark(p.identity());
        self.stack.push(p.identity());
        let mut count = 1u64;
        while let Some(x) = self.stack.pop() {
            for g in gens {
                let y = p.mul(x, g);
                if mark(y) {
                    count += 1;
                    self.stack.push(y);
                }
            }
        }
        count == target
    }
}

fn check_candidate_cap(p: &GroupParams, max_bits: u32) -> Result<()> {
    let needed = 2 * p.order_bits();
    if needed > max_bits {
        return Err(Error::CapExceeded {
            needed,
            cap: max_bits,
        });
    }
    Ok(())
}

/// Every `(σ(α), σ(β))` that passes the relation and generation tests, in
/// lexicographic order of `(x1, y1, x2, y2)`. Works for unclassified
/// parameters too.
pub fn enumerate_automorphisms(p: &GroupParams, opts: &OracleOptions) -> Result<Vec<GenImages>> {
    check_candidate_cap(p, opts.max_bits)?;
    let (na, nb) = (1i64 << p.a(), 1i64 << p.b());
    let chunks: Vec<Vec<GenImages>> = with_pool(opts.jobs, || {
        (0..na)
            .into_par_iter()
            .map(|x1| {
                let mut gen = Generation::new(p);
                let mut local = Vec::new();
                for y1 in 0..nb {
                    let ia = p.element(x1, y1);
                    for x2 in 0..na {
                        for y2 in 0..nb {
                            let g = GenImages::new(ia, p.element(x2, y2));
                            if hom::satisfies_relations(&g, p)
                                && gen.generates_all([g.img_alpha, g.img_beta], p)
                            {
                                local.push(g);
                            }
                        }
                    }
                }
                local
            })
            .collect()
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Count of [`enumerate_automorphisms`] without keeping the list.
pub fn count_automorphisms(p: &GroupParams, opts: &OracleOptions) -> Result<u64> {
    Ok(enumerate_automorphisms(p, opts)?.len() as u64)
}

/// Writes one automorphism per line in the quadruple JSON form.
pub fn write_jsonl<W: Write>(out: &mut W, p: &GroupParams, auts: &[GenImages]) -> Result<()> {
    for g in auts {
        let line = match Automorphism::from_images(p, *g) {
            Ok(a) => serde_json::to_string(&a),
            Err(_) => serde_json::to_string(g),
        }
        .expect("serializable");
        writeln!(out, "{line}").map_err(|e| Error::Parse(format!("write failed: {e}")))?;
    }
    Ok(())
}

/// Closure of a set of automorphisms under composition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Closure {
    elements: BTreeSet<GenImages>,
}

impl Closure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GenImages) -> bool {
        self.elements.contains(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GenImages> {
        self.elements.iter()
    }

    pub fn intersection(&self, other: &Closure) -> Closure {
        Closure {
            elements: self
                .elements
                .intersection(&other.elements)
                .copied()
                .collect(),
        }
    }

    /// Same elements as a sorted slice would give.
    pub fn to_vec(&self) -> Vec<GenImages> {
        self.elements.iter().copied().collect()
    }
}

/// The subgroup generated by `gens` (identity included). In a finite group
/// closure under products already gives inverses.
pub fn perm_closure(gens: &[GenImages], p: &GroupParams, max_bits: u32) -> Result<Closure> {
    let cap = 1usize.checked_shl(max_bits).unwrap_or(usize::MAX);
    let mut elements = BTreeSet::new();
    let id = GenImages::identity(p);
    elements.insert(id);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = hom::compose_images(g, &x, p);
            if elements.insert(y) {
                if elements.len() > cap {
                    return Err(Error::CapExceeded {
                        needed: max_bits + 1,
                        cap: max_bits,
                    });
                }
                frontier.push(y);
            }
        }
    }
    Ok(Closure { elements })
}

fn closure_of(p: &GroupParams, which: Option<Subgroup>, max_bits: u32) -> Result<Closure> {
    let gens: Vec<GenImages> = structure::standard_generators(p)?
        .into_iter()
        .filter(|g| which.is_none_or(|w| g.subgroup == w))
        .map(|g| g.aut.images())
        .collect();
    perm_closure(&gens, p, max_bits)
}

/// `X`, generated by the standard φ-type generators.
pub fn x_closure(p: &GroupParams, max_bits: u32) -> Result<Closure> {
    closure_of(p, Some(Subgroup::X), max_bits)
}

/// `Y`, generated by the standard ψ-type generators.
pub fn y_closure(p: &GroupParams, max_bits: u32) -> Result<Closure> {
    closure_of(p, Some(Subgroup::Y), max_bits)
}

/// The group generated by all standard generators.
pub fn standard_closure(p: &GroupParams, max_bits: u32) -> Result<Closure> {
    closure_of(p, None, max_bits)
}

/// `X ∩ Y` computed from the two closures.
pub fn intersection_xy(p: &GroupParams, max_bits: u32) -> Result<Vec<Automorphism>> {
    let x = x_closure(p, max_bits)?;
    let y = y_closure(p, max_bits)?;
    x.intersection(&y)
        .iter()
        .map(|g| Automorphism::from_images(p, *g))
        .collect()
}

/// Evaluates each word on the standard generators; `true` iff all are the
/// identity. An empty list is trivially satisfied.
pub fn verify_relators(relators: &[Word], p: &GroupParams) -> Result<bool> {
    Ok(relator_results(relators, p)?.iter().all(|(_, ok)| *ok))
}

/// Per-relator outcome, in input order.
pub fn relator_results(relators: &[Word], p: &GroupParams) -> Result<Vec<(String, bool)>> {
    let gens: HashMap<String, Automorphism> = structure::generator_map(p)?;
    let id = Automorphism::identity(p)?;
    relators
        .iter()
        .map(|w| Ok((w.to_string(), w.eval(&gens, &id)?.is_identity())))
        .collect()
}

/// Measured order of each named generator against its expected power of two.
pub fn generator_order_results(p: &GroupParams) -> Result<Vec<(String, u64, u64)>> {
    let gens = structure::generator_map(p)?;
    let x = structure::x_presentation(p)?;
    let y = structure::y_presentation(p)?;
    Ok(x.orders
        .iter()
        .chain(y.orders.iter())
        .map(|(n, k)| (n.clone(), 1u64 << k, gens[n].order()))
        .collect())
}
