use std::collections::{BTreeSet, HashMap};

use super::BasedComplex;
use crate::ring::Polynomial;

/// Outcome of comparing two complexes up to signed permutations of bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    pub equivalent: bool,
    /// When equivalent: `bases[i][g] = (h, negate)` sends generator `g` of
    /// the first complex's `F_i` to `+-` generator `h` of the second's.
    pub bases: Vec<Vec<(usize, bool)>>,
    pub reason: Option<String>,
}

impl DiffReport {
    fn different(reason: impl Into<String>) -> Self {
        DiffReport {
            equivalent: false,
            bases: Vec::new(),
            reason: Some(reason.into()),
        }
    }
}

struct Search<'a> {
    left: &'a BasedComplex,
    /// `right_cols[i - 1][h]`: column `h` of the second complex's `A_i`, by row.
    right_cols: Vec<Vec<HashMap<usize, Polynomial>>>,
    left_cols: Vec<Vec<Vec<(usize, Polynomial)>>>,
    right_degrees: Option<Vec<Vec<crate::ring::MultiDegree>>>,
    order: Vec<(usize, usize)>,
    assign: Vec<Vec<Option<(usize, bool)>>>,
    used: Vec<Vec<bool>>,
}

impl Search<'_> {
    fn run(&mut self, step: usize) -> bool {
        let Some(&(i, g)) = self.order.get(step) else {
            return true;
        };
        for h in 0..self.used[i].len() {
            if self.used[i][h] {
                continue;
            }
            if let Some(degrees) = &self.right_degrees {
                if degrees[i][h] != self.left.module(i).generator(g).degree {
                    continue;
                }
            }
            for negate in [false, true] {
                if i > 0 && !self.column_matches(i, g, h, negate) {
                    continue;
                }
                self.assign[i][g] = Some((h, negate));
                self.used[i][h] = true;
                if self.run(step + 1) {
                    return true;
                }
                self.assign[i][g] = None;
                self.used[i][h] = false;
            }
        }
        false
    }

    fn column_matches(&self, i: usize, g: usize, h: usize, negate: bool) -> bool {
        let left = &self.left_cols[i - 1][g];
        let right = &self.right_cols[i - 1][h];
        if left.len() != right.len() {
            return false;
        }
        left.iter().all(|(r, p)| {
            let (target, row_negate) = self.assign[i - 1][*r].expect("rows assigned first");
            match right.get(&target) {
                Some(q) if negate ^ row_negate => *p == -q,
                Some(q) => p == q,
                None => false,
            }
        })
    }
}

/// Decides whether `b` equals `a` after a signed permutation of each basis.
///
/// Variables are matched by name. Generator degrees must agree when both
/// complexes use the same grading.
pub fn complex_diff(a: &BasedComplex, b: &BasedComplex) -> DiffReport {
    let names_a: BTreeSet<&String> = a.ring().names().iter().collect();
    let names_b: BTreeSet<&String> = b.ring().names().iter().collect();
    if names_a != names_b {
        return DiffReport::different("the complexes use different variables");
    }
    if a.ring().field() != b.ring().field() {
        return DiffReport::different("the complexes use different fields");
    }
    if a.ranks() != b.ranks() {
        return DiffReport::different(format!("ranks differ: {:?} vs {:?}", a.ranks(), b.ranks()));
    }
    let mut right_cols = Vec::with_capacity(b.length());
    for m in b.maps() {
        let mut cols = vec![HashMap::new(); m.ncols()];
        for (r, c, p) in m.entries() {
            match p.map_to_ring(a.ring()) {
                Ok(q) => {
                    cols[c].insert(r, q);
                }
                Err(e) => return DiffReport::different(e.to_string()),
            }
        }
        right_cols.push(cols);
    }
    let left_cols = a
        .maps()
        .iter()
        .map(|m| {
            m.columns()
                .into_iter()
                .map(|col| col.into_iter().map(|(r, p)| (r, p.clone())).collect())
                .collect()
        })
        .collect();
    let right_degrees = (a.grading() == b.grading()).then(|| {
        b.modules()
            .iter()
            .map(|m| m.generators().iter().map(|g| g.degree.clone()).collect())
            .collect()
    });
    let ranks = a.ranks();
    let mut search = Search {
        left: a,
        right_cols,
        left_cols,
        right_degrees,
        order: ranks
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |g| (i, g)))
            .collect(),
        assign: ranks.iter().map(|&r| vec![None; r]).collect(),
        used: ranks.iter().map(|&r| vec![false; r]).collect(),
    };
    if search.run(0) {
        DiffReport {
            equivalent: true,
            bases: search
                .assign
                .into_iter()
                .map(|m| m.into_iter().map(|x| x.expect("all assigned")).collect())
                .collect(),
            reason: None,
        }
    } else {
        DiffReport::different("no signed basis permutation matches the maps")
    }
}
