mod common;

use std::collections::BTreeMap;

use itertools::Itertools;
use prunres::cli::sample_orders;
use prunres::complexes::BettiTable;
use prunres::determinantal::{eagon_northcott, SparsePattern};
use prunres::groebner::{initial_ideal, nonzero_minors, prime_shape};
use prunres::invariants::en_betti_formula;
use prunres::monomial::{
    codim, lcm_betti, squarefree_degree_k_ideal, substitute_columns, MonomialIdeal,
};
use prunres::pruning::{pruned_eagon_northcott, resolve_sparse_determinantal, HomologyCheck};
use prunres::ring::{Field, Monomial, Ring, TermOrder};

fn sparse_3x4() -> SparsePattern {
    SparsePattern::parse("3 4 / 0 0 x3 0 / 0 0 y3 y4 / z1 z2 0 0").unwrap()
}

fn all_squarefree(nvars: usize, degree: usize) -> MonomialIdeal {
    let names: Vec<String> = (1..=nvars).map(|j| format!("y_{j}")).collect();
    let ring = Ring::new(names, Field::default()).unwrap();
    let gens = (0..nvars).combinations(degree).map(|support| {
        let mut exps = vec![0u16; nvars];
        for v in support {
            exps[v] = 1;
        }
        Monomial::from_exponents(exps)
    });
    MonomialIdeal::new(&ring, gens).unwrap()
}

#[test]
fn eagon_northcott_betti_numbers_match_the_formula() {
    for n in 1..=7 {
        for k in 1..=n {
            let c = eagon_northcott(k, n, Field::default()).unwrap();
            assert!(c.is_minimal());
            assert_eq!(c.compose_check().unwrap(), None, "{k} x {n}");
            assert_eq!(
                c.betti_table().unwrap(),
                en_betti_formula(k, n).unwrap(),
                "{k} x {n}"
            );
        }
    }
}

#[test]
fn results_do_not_depend_on_the_field() {
    let mut patterns = vec![sparse_3x4()];
    patterns.extend(common::random_patterns(3, 5, 8, 0.3, 11));
    for p in &patterns {
        let tables: Vec<BettiTable> = common::FIELDS
            .iter()
            .map(|&field| {
                let res = resolve_sparse_determinantal(p, field, HomologyCheck::Default).unwrap();
                assert!(res.verification.passed(), "{p}over {field}");
                res.betti().unwrap()
            })
            .collect();
        assert!(tables.windows(2).all(|w| w[0] == w[1]), "{p}");
    }
}

#[test]
fn squarefree_degree_three_in_six_variables_has_the_generic_table() {
    let ideal = all_squarefree(6, 3);
    assert_eq!(ideal.len(), 20);
    assert_eq!(lcm_betti(&ideal).unwrap(), en_betti_formula(3, 6).unwrap());
}

#[test]
fn squarefree_ideal_of_the_sparse_example() {
    let j = squarefree_degree_k_ideal(&sparse_3x4(), Field::default()).unwrap();
    assert_eq!(j.to_string(), "(y_1*y_3*y_4, y_2*y_3*y_4)");
    assert_eq!(
        lcm_betti(&j).unwrap(),
        BettiTable::from_entries([(0, 0, 1), (1, 3, 2), (2, 4, 1)])
    );
}

fn collapse_all_columns(p: &SparsePattern, ideal: &MonomialIdeal) -> MonomialIdeal {
    let targets: Vec<String> = (1..=p.n()).map(|j| format!("y_{j}")).collect();
    let mapping: Vec<(&str, &str)> = (0..p.k())
        .flat_map(|r| (0..p.n()).map(move |c| (r, c)))
        .filter(|&(r, c)| !p.is_zero(r, c))
        .map(|(r, c)| (p.name(r, c), targets[c].as_str()))
        .collect();
    let collapsed = substitute_columns(ideal, p, &mapping).unwrap();
    let ring = Ring::new(targets.clone(), Field::default()).unwrap();
    collapsed.map_to_ring(&ring).unwrap()
}

#[test]
fn collapsing_columns_of_the_generic_initial_ideal() {
    let p = SparsePattern::generic(3, 6).unwrap();
    let initial = initial_ideal(&p, &TermOrder::Lex, Field::default()).unwrap();
    let collapsed = collapse_all_columns(&p, &initial);
    assert_eq!(collapsed.to_string(), all_squarefree(6, 3).to_string());
}

#[test]
fn collapsing_columns_matches_the_squarefree_ideal() {
    for p in common::random_patterns(3, 5, 15, 0.3, 12) {
        let initial = initial_ideal(&p, &TermOrder::Lex, Field::default()).unwrap();
        let collapsed = collapse_all_columns(&p, &initial);
        let squarefree = squarefree_degree_k_ideal(&p, Field::default()).unwrap();
        assert_eq!(collapsed.to_string(), squarefree.to_string(), "{p}");
    }
}

#[test]
fn one_column_substitution_keeps_a_linear_resolution() {
    let mut checked = 0;
    for p in common::sweep_patterns(3, 4)
        .into_iter()
        .chain(common::sweep_patterns(3, 5))
    {
        let initial = initial_ideal(&p, &TermOrder::Lex, Field::default()).unwrap();
        let column: Vec<&str> = (0..p.k())
            .filter(|&r| !p.is_zero(r, 0))
            .map(|r| p.name(r, 0))
            .collect();
        if column.len() < 2 {
            continue;
        }
        let substituted = substitute_columns(&initial, &p, &[(column[0], column[1])]).unwrap();
        let table = lcm_betti(&substituted).unwrap();
        assert!(table.is_linear_from(p.k() as i64), "{p}{table}");
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn equal_minor_counts_give_equal_tables_in_codimension_n_minus_k() {
    let mut by_count: BTreeMap<usize, BettiTable> = BTreeMap::new();
    let mut seen = 0;
    for p in common::random_patterns(3, 5, 400, 0.3, 13) {
        let initial = initial_ideal(&p, &TermOrder::Lex, Field::default()).unwrap();
        if codim(&initial).unwrap() != p.n() - p.k() {
            continue;
        }
        let count = nonzero_minors(&p, Field::default()).len();
        let table = pruned_eagon_northcott(&p, Field::default())
            .unwrap()
            .betti_table()
            .unwrap();
        let first = by_count.entry(count).or_insert_with(|| table.clone());
        assert_eq!(*first, table, "{p}");
        seen += 1;
        if seen == 20 {
            break;
        }
    }
    assert_eq!(seen, 20);
}

#[test]
fn minimal_primes_of_initial_ideals_have_the_column_shape() {
    for (k, n) in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)] {
        let p = SparsePattern::generic(k, n).unwrap();
        for (idx, order) in sample_orders(k * n, 6, 17).into_iter().enumerate() {
            let initial = initial_ideal(&p, &order, Field::default()).unwrap();
            let shape = prime_shape(&p, &initial).unwrap();
            assert!(shape.holds(), "{k} x {n}, order {idx} ({order}): {shape:?}");
        }
    }
}
