use std::collections::BTreeSet;

use hloc::zmod::{howell_form, quotient_structure, solve_linear, ResidueMatrix};
use proptest::prelude::*;

const MODULI: [u64; 4] = [4, 8, 9, 27];

/// Additive closure of `rows` in `(Z/m)^r`.
fn span(rows: &[Vec<u64>], m: u64, r: usize) -> BTreeSet<Vec<u64>> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![vec![0; r]];
    seen.insert(vec![0; r]);
    while let Some(v) = frontier.pop() {
        for row in rows {
            let w: Vec<u64> = v.iter().zip(row).map(|(&a, &b)| (a + b) % m).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen
}

fn rows_strategy() -> impl Strategy<Value = (u64, usize, Vec<Vec<u64>>)> {
    (0..MODULI.len(), 1usize..=3, 0usize..=4).prop_flat_map(|(mi, r, k)| {
        let m = MODULI[mi];
        (
            Just(m),
            Just(r),
            prop::collection::vec(prop::collection::vec(0..m, r), k),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn howell_is_idempotent((m, r, rows) in rows_strategy()) {
        let h = howell_form(&rows, m, r).unwrap();
        let again = howell_form(h.rows(), m, r).unwrap();
        prop_assert_eq!(h.rows(), again.rows());
    }

    #[test]
    fn howell_preserves_span((m, r, rows) in rows_strategy()) {
        let h = howell_form(&rows, m, r).unwrap();
        let expected = span(&rows, m, r);
        prop_assert_eq!(span(h.rows(), m, r), expected.clone());
        prop_assert_eq!(h.order(), expected.len() as u128);
        let enumerated: BTreeSet<Vec<u64>> = h.enumerate().into_iter().collect();
        prop_assert_eq!(enumerated, expected);
    }

    #[test]
    fn equal_spans_give_equal_bases((m, r, rows) in rows_strategy(), mix in prop::collection::vec(0u64..30, 16), unit_choice in 0usize..4) {
        // Rebuild the same span from shuffled, rescaled and recombined rows.
        let units: Vec<u64> = (1..m).filter(|&u| hloc::zmod::arith::gcd(u, m) == 1).collect();
        let u = units[unit_choice % units.len()];
        let mut other: Vec<Vec<u64>> = rows.iter().rev().map(|row| row.iter().map(|&x| x * u % m).collect()).collect();
        for (i, &c) in mix.iter().enumerate().take(rows.len() * 2) {
            if rows.is_empty() { break; }
            let src = &rows[i % rows.len()];
            let extra: Vec<u64> = src.iter().map(|&x| x * c % m).collect();
            other.push(extra);
        }
        prop_assert_eq!(span(&rows, m, r), span(&other, m, r));
        let a = howell_form(&rows, m, r).unwrap();
        let b = howell_form(&other, m, r).unwrap();
        prop_assert_eq!(a.rows(), b.rows());
    }

    #[test]
    fn spans_compare_by_basis((m, r, rows) in rows_strategy(), more in prop::collection::vec(prop::collection::vec(0u64..27, 3), 0..4)) {
        let other: Vec<Vec<u64>> = more.iter().map(|v| v[..r].iter().map(|&x| x % m).collect()).collect();
        let a = howell_form(&rows, m, r).unwrap();
        let b = howell_form(&other, m, r).unwrap();
        prop_assert_eq!(a.rows() == b.rows(), span(&rows, m, r) == span(&other, m, r));
    }

    #[test]
    fn solve_is_sound_and_complete(
        mi in 0usize..4,
        rows in 1usize..=3,
        cols in 1usize..=2,
        entries in prop::collection::vec(0u64..27, 9),
        rhs in prop::collection::vec(0u64..27, 3),
    ) {
        let m = MODULI[mi];
        let a = ResidueMatrix::new(m, rows, cols, entries[..rows * cols].iter().map(|&x| x % m).collect()).unwrap();
        let b: Vec<u64> = rhs[..rows].iter().map(|&x| x % m).collect();
        let sol = solve_linear(&a, &b).unwrap();

        let mut all = vec![vec![]];
        for _ in 0..cols {
            all = all.into_iter().flat_map(|v: Vec<u64>| (0..m).map(move |x| { let mut w = v.clone(); w.push(x); w })).collect();
        }
        let solutions: Vec<&Vec<u64>> = all.iter().filter(|x| a.mul_vec(x).unwrap() == b).collect();
        match &sol.particular {
            Some(x) => prop_assert_eq!(a.mul_vec(x).unwrap(), b.clone()),
            None => prop_assert!(solutions.is_empty()),
        }
        let kernel: BTreeSet<Vec<u64>> = all.iter().filter(|x| a.mul_vec(x).unwrap().iter().all(|&c| c == 0)).cloned().collect();
        prop_assert_eq!(sol.kernel.enumerate().into_iter().collect::<BTreeSet<_>>(), kernel.clone());
        if sol.particular.is_some() {
            prop_assert_eq!(solutions.len(), kernel.len());
        }
    }

    #[test]
    fn quotient_order_equation((m, r, rows) in rows_strategy(), picks in prop::collection::vec((0usize..4, 0u64..27), 0..4)) {
        let ambient = howell_form(&rows, m, r).unwrap();
        let sub_rows: Vec<Vec<u64>> = picks
            .iter()
            .filter(|_| !rows.is_empty())
            .map(|&(i, c)| rows[i % rows.len()].iter().map(|&x| x * c % m).collect())
            .collect();
        let sub = howell_form(&sub_rows, m, r).unwrap();
        let q = quotient_structure(&ambient, &sub).unwrap();
        prop_assert_eq!(q.order() * sub.order(), ambient.order());
        prop_assert_eq!(ambient.order(), span(&rows, m, r).len() as u128);
        prop_assert_eq!(sub.order(), span(&sub_rows, m, r).len() as u128);
    }
}
