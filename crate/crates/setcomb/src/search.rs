//! Seeded extremal search over grid sets.
//!
//! Randomized hill-climbing on the restricted-weak-type ratio: each
//! iteration proposes a batch of single-cell moves (remove a member or
//! add a vacant face neighbor), scores them against incremental
//! projection multiplicity maps, and accepts the best strict improvement.
//! The trace is therefore non-decreasing, runs are deterministic for a
//! fixed seed, and the search never claims optimality.

use polyalg::{rat, rat_to_f64, Rational};
use polytope::LebesguePair;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

use crate::{GridSet, Projection, SetError};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub pair: LebesguePair,
    /// Hill-climb iterations.
    pub budget: usize,
    pub seed: u64,
    /// Candidate moves scored per iteration.
    pub batch: usize,
}

impl SearchConfig {
    pub fn new(pair: LebesguePair, budget: usize, seed: u64) -> SearchConfig {
        SearchConfig { pair, budget, seed, batch: 16 }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub best: GridSet,
    /// Current ratio after every iteration; non-decreasing.
    pub trace: Vec<f64>,
    pub start_ratio: f64,
    pub best_ratio: f64,
    pub accepted: usize,
}

#[derive(Clone, Debug)]
enum Move {
    Remove(usize),
    Add(Vec<i64>),
}

/// Image cell key of one grid cell under a projection, matching the
/// cellwise `GridSet` projections.
fn key_for(
    projection: &Projection,
    lower: &[Rational],
    cell: &Rational,
    idx: &[i64],
) -> Result<Vec<i64>, SetError> {
    match projection {
        Projection::DropAxis(axis) => Ok(idx
            .iter()
            .enumerate()
            .filter(|(a, _)| a != axis)
            .map(|(_, i)| *i)
            .collect()),
        Projection::Maps(maps) => {
            use num_traits::ToPrimitive;
            let center: Vec<Rational> = idx
                .iter()
                .zip(lower)
                .map(|(i, lo)| lo + cell * rat(2 * i + 1, 2))
                .collect();
            maps.iter()
                .map(|m| {
                    (m.eval_rational(&center) / cell)
                        .floor()
                        .to_integer()
                        .to_i64()
                        .ok_or_else(|| {
                            SetError::BadGrid("a projected point is too far from the origin".into())
                        })
                })
                .collect()
        }
    }
}

fn validate_projection(projection: &Projection, dim: usize) -> Result<(), SetError> {
    match projection {
        Projection::DropAxis(axis) if *axis >= dim => Err(SetError::BadGrid(format!(
            "axis {axis} is outside a {dim}-dimensional grid"
        ))),
        Projection::Maps(maps) if maps.len() + 1 != dim => {
            Err(SetError::DimensionMismatch { expected: dim - 1, got: maps.len() })
        }
        Projection::Maps(maps) => {
            for m in maps {
                if m.nvars() != dim {
                    return Err(SetError::DimensionMismatch { expected: dim, got: m.nvars() });
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

pub fn extremal_search(
    seed_set: &GridSet,
    pi1: &Projection,
    pi2: &Projection,
    config: &SearchConfig,
) -> Result<SearchReport, SetError> {
    if config.pair.is_trivially_bounded() {
        return Err(SetError::TrivialRegime);
    }
    if config.budget == 0 {
        return Err(SetError::BadConfig("the search budget must be positive".into()));
    }
    if config.batch == 0 {
        return Err(SetError::BadConfig("the candidate batch must be positive".into()));
    }
    if seed_set.is_empty() {
        return Err(SetError::EmptySet);
    }
    let dim = seed_set.dim();
    validate_projection(pi1, dim)?;
    validate_projection(pi2, dim)?;
    let lower = seed_set.lower().to_vec();
    let cell = seed_set.cell().clone();
    let extent = seed_set.extent().to_vec();
    let h = rat_to_f64(&cell);
    let recip1 = rat_to_f64(&config.pair.p1.recip());
    let recip2 = rat_to_f64(&config.pair.p2.recip());
    let ratio_of = |cells: usize, image1: usize, image2: usize| -> f64 {
        let measure = cells as f64 * h.powi(dim as i32);
        let base = h.powi(dim as i32 - 1);
        measure / ((image1 as f64 * base).powf(recip1) * (image2 as f64 * base).powf(recip2))
    };

    let mut members: Vec<Vec<i64>> = seed_set.cells().cloned().collect();
    let mut positions: HashMap<Vec<i64>, usize> =
        members.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut mult1: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut mult2: HashMap<Vec<i64>, usize> = HashMap::new();
    for member in &members {
        *mult1.entry(key_for(pi1, &lower, &cell, member)?).or_insert(0) += 1;
        *mult2.entry(key_for(pi2, &lower, &cell, member)?).or_insert(0) += 1;
    }
    let mut current = ratio_of(members.len(), mult1.len(), mult2.len());
    let start_ratio = current;
    let mut accepted = 0usize;
    let mut trace = Vec::with_capacity(config.budget);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    for _ in 0..config.budget {
        let mut moves = Vec::with_capacity(config.batch);
        for _ in 0..config.batch {
            if rng.gen_bool(0.5) && members.len() > 1 {
                moves.push(Move::Remove(rng.gen_range(0..members.len())));
            } else {
                let member = &members[rng.gen_range(0..members.len())];
                let axis = rng.gen_range(0..dim);
                let mut neighbor = member.clone();
                neighbor[axis] += if rng.gen_bool(0.5) { 1 } else { -1 };
                let in_bounds = neighbor[axis] >= 0 && neighbor[axis] < extent[axis];
                if in_bounds && !positions.contains_key(&neighbor) {
                    moves.push(Move::Add(neighbor));
                }
            }
        }
        let scored: Vec<(usize, f64)> = moves
            .par_iter()
            .enumerate()
            .map(|(i, mv)| -> Result<(usize, f64), SetError> {
                let (cells, d1, d2) = match mv {
                    Move::Remove(at) => {
                        let gone = &members[*at];
                        let k1 = key_for(pi1, &lower, &cell, gone)?;
                        let k2 = key_for(pi2, &lower, &cell, gone)?;
                        let d1 = if mult1[&k1] == 1 { -1i64 } else { 0 };
                        let d2 = if mult2[&k2] == 1 { -1i64 } else { 0 };
                        (members.len() - 1, d1, d2)
                    }
                    Move::Add(idx) => {
                        let k1 = key_for(pi1, &lower, &cell, idx)?;
                        let k2 = key_for(pi2, &lower, &cell, idx)?;
                        let d1 = i64::from(!mult1.contains_key(&k1));
                        let d2 = i64::from(!mult2.contains_key(&k2));
                        (members.len() + 1, d1, d2)
                    }
                };
                let image1 = (mult1.len() as i64 + d1) as usize;
                let image2 = (mult2.len() as i64 + d2) as usize;
                Ok((i, ratio_of(cells, image1, image2)))
            })
            .collect::<Result<_, _>>()?;
        let winner = scored.into_iter().reduce(|a, b| {
            if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                b
            } else {
                a
            }
        });
        if let Some((at, ratio)) = winner {
            if ratio > current {
                match &moves[at] {
                    Move::Remove(i) => {
                        let gone = members.swap_remove(*i);
                        positions.remove(&gone);
                        if let Some(moved) = members.get(*i) {
                            positions.insert(moved.clone(), *i);
                        }
                        decrement(&mut mult1, key_for(pi1, &lower, &cell, &gone)?);
                        decrement(&mut mult2, key_for(pi2, &lower, &cell, &gone)?);
                    }
                    Move::Add(idx) => {
                        *mult1.entry(key_for(pi1, &lower, &cell, idx)?).or_insert(0) += 1;
                        *mult2.entry(key_for(pi2, &lower, &cell, idx)?).or_insert(0) += 1;
                        positions.insert(idx.clone(), members.len());
                        members.push(idx.clone());
                    }
                }
                current = ratio;
                accepted += 1;
            }
        }
        trace.push(current);
    }

    let best = GridSet::with_cells(
        lower,
        seed_set.upper().to_vec(),
        cell,
        members,
    )?;
    Ok(SearchReport { best, trace, start_ratio, best_ratio: current, accepted })
}

fn decrement(mult: &mut HashMap<Vec<i64>, usize>, key: Vec<i64>) {
    match mult.get_mut(&key) {
        Some(count) if *count > 1 => *count -= 1,
        _ => {
            mult.remove(&key);
        }
    }
}
