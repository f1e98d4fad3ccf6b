//! Greedy set cover over grid cells, followed by an exhaustive search for a
//! smaller cover among the same candidates when that search fits a budget.

use rayon::prelude::*;
use serde::Serialize;

use super::grid::{verify_covering, CoveringCertificate, Grid, GridOptions};
use crate::error::Result;
use crate::linalg;
use crate::polytope::{Point, Polytope};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyOptions {
    pub grid: GridOptions,
    /// Cap on grid cells meeting the body (bitset rows are this long).
    pub max_relevant_cells: usize,
    /// Total candidate subsets the refinement may test.
    pub max_subset_checks: f64,
    /// Known lower bound on the covering number; smaller covers are not tried.
    pub min_size: usize,
}

impl GreedyOptions {
    pub fn for_dim(n: usize) -> Self {
        Self {
            grid: GridOptions::for_dim(n),
            max_relevant_cells: 4_000_000,
            max_subset_checks: 2e5,
            min_size: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GreedyCover {
    /// Size of the certified cover, if one was found.
    pub n_up: Option<usize>,
    pub centers: Vec<Point>,
    /// Size reached by the greedy pass before refinement.
    pub greedy_size: Option<usize>,
    pub certificate: CoveringCertificate,
}

struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    fn count_and(&self, other: &Bits) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    fn clear_from(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

/// Picks, round by round, the candidate covering the most uncovered cells
/// (ties to the lowest index), then tries to certify fewer centers.
pub fn greedy_cover_upper(body: &Polytope, candidates: &[Point], opts: &GreedyOptions) -> Result<GreedyCover> {
    // The cell model needs a margin that a body filling one ball never
    // leaves, so single balls are tried exactly first.
    let eps = body.eps();
    if let Some(c) = candidates
        .iter()
        .find(|c| body.vertices().iter().all(|v| linalg::dist(v, c) <= 1.0 + eps))
    {
        let centers = vec![c.clone()];
        let certificate = verify_covering(body, &centers, opts.grid)?;
        return Ok(GreedyCover {
            n_up: certificate.is_certified().then_some(1),
            centers,
            greedy_size: Some(1),
            certificate,
        });
    }
    let grid = Grid::over(body, opts.grid.delta, opts.grid.max_cells)?;
    let cells = grid.relevant_centers(body);
    if cells.len() > opts.max_relevant_cells {
        return Err(crate::Error::BudgetExceeded {
            what: "greedy cover (cells meeting the body)",
            required: cells.len() as f64,
            cap: opts.max_relevant_cells as f64,
        });
    }
    let reach = 1.0 - opts.grid.delta * (body.dim() as f64).sqrt() / 2.0;
    let coverage: Vec<Bits> = candidates
        .par_iter()
        .map(|c| {
            let mut b = Bits::zeros(cells.len());
            for (i, g) in cells.iter().enumerate() {
                if linalg::dist(g, c) <= reach {
                    b.set(i);
                }
            }
            b
        })
        .collect();

    let mut uncovered = Bits::zeros(cells.len());
    (0..cells.len()).for_each(|i| uncovered.set(i));
    let mut chosen: Vec<usize> = Vec::new();
    while uncovered.count() > 0 {
        let best = coverage
            .iter()
            .enumerate()
            .map(|(i, b)| (i, b.count_and(&uncovered)))
            .fold(None, |acc: Option<(usize, u32)>, (i, gain)| match acc {
                Some((_, g)) if g >= gain => acc,
                _ => Some((i, gain)),
            });
        match best {
            Some((i, gain)) if gain > 0 => {
                uncovered.clear_from(&coverage[i]);
                chosen.push(i);
            }
            _ => break,
        }
    }
    let greedy_ok = uncovered.count() == 0;
    let greedy_size = greedy_ok.then_some(chosen.len());

    if greedy_ok {
        if let Some(better) = smallest_subset(&coverage, cells.len(), chosen.len(), opts) {
            chosen = better;
        }
    }
    let centers: Vec<Point> = chosen.iter().map(|&i| candidates[i].clone()).collect();
    let certificate = verify_covering(body, &centers, opts.grid)?;
    let n_up = certificate.is_certified().then_some(centers.len());
    Ok(GreedyCover {
        n_up,
        centers,
        greedy_size,
        certificate,
    })
}

/// Lexicographically first covering subset of the smallest size below
/// `upper`, searching sizes from `opts.min_size` while the budget allows.
fn smallest_subset(coverage: &[Bits], cells: usize, upper: usize, opts: &GreedyOptions) -> Option<Vec<usize>> {
    let useful: Vec<usize> = (0..coverage.len())
        .filter(|&i| coverage[i].count() > 0)
        .collect();
    let mut budget = opts.max_subset_checks;
    for size in opts.min_size.max(1)..upper {
        let subsets = crate::polytope::binomial(useful.len(), size);
        if subsets > budget {
            return None;
        }
        budget -= subsets;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut acc = Bits::zeros(cells);
            for &k in &idx {
                for (a, b) in acc.words.iter_mut().zip(&coverage[useful[k]].words) {
                    *a |= b;
                }
            }
            if acc.count() as usize == cells {
                return Some(idx.iter().map(|&k| useful[k]).collect());
            }
            if !crate::polytope::next_combination(&mut idx, useful.len()) {
                break;
            }
        }
    }
    None
}
