use std::collections::HashSet;

use subperm::enumeration::{
    catalan_table, dyck_avoiding_count, gamma_u_bounded_count, increasing_split, lj_coefficients, pj_coefficients,
};
use subperm::oracle::{check_names, run_suite};
use subperm::perm::{all_permutations, enumerate_class, sub_permutation, DEFAULT_ORACLE_CEILING};
use subperm::trees::{all_increasing_trees, all_planar_trees, phi, phi_inverse, psi};
use subperm::Permutation;

#[test]
fn phi_and_psi_are_bijections() {
    let mut factorial = 1usize;
    let catalan = catalan_table(8);
    for n in 1..=8 {
        factorial *= n;
        let images: HashSet<Permutation> = all_increasing_trees(n).iter().map(|t| phi(t).unwrap()).collect();
        assert_eq!(images.len(), factorial, "phi at n={n}");
        let av312: HashSet<Permutation> = all_planar_trees(n).iter().map(|t| psi(t).unwrap()).collect();
        assert_eq!(av312.len(), usize::try_from(catalan.get(n).unwrap()).unwrap(), "psi at n={n}");
        let pattern: Permutation = "3 1 2".parse().unwrap();
        assert!(av312.iter().all(|p| p.avoids(&pattern).unwrap()));
    }
}

#[test]
fn every_window_matches_its_descendants() {
    for n in 1..=8 {
        for p in all_permutations(n) {
            let t = phi_inverse(&p).unwrap();
            for k in 1..=n as u32 {
                let s = sub_permutation(&p, k).unwrap();
                assert_eq!(t.descendant_count(k).unwrap(), s.len());
            }
            assert_eq!(sub_permutation(&p, 1).unwrap().pattern, p);
        }
    }
}

#[test]
fn class_sizes() {
    let p123: Permutation = "1 2 3".parse().unwrap();
    assert_eq!(enumerate_class(7, Some(&p123)).unwrap().count(), 429);
    assert_eq!(enumerate_class(0, None).unwrap().collect::<Vec<_>>(), vec![Permutation::empty()]);
}

#[test]
fn oracle_suite_passes_at_eight() {
    let reports = run_suite("all", 8, DEFAULT_ORACLE_CEILING).unwrap();
    assert_eq!(reports.len(), check_names().len());
    for r in &reports {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn table_invariants() {
    let c = catalan_table(100);
    let mut previous = pj_coefficients(1, 100).unwrap();
    for j in 2..=6 {
        let next = pj_coefficients(j, 100).unwrap();
        for n in 0..=100 {
            assert!(previous.get(n) <= next.get(n), "j={j} n={n}");
            assert!(next.get(n) <= c.get(n));
        }
        previous = next;
    }
    for m in 1..=3 {
        let l = lj_coefficients(m, 100);
        for n in 0..=100 {
            assert!(l.get(n) <= c.get(n));
        }
    }
    for n in 3..=20 {
        let (a, b) = increasing_split(n).unwrap();
        assert_eq!(&(a + b), c.get(n).unwrap());
    }
    for n in 0..=12 {
        for j in 1..=4 {
            assert_eq!(gamma_u_bounded_count(n, j), dyck_avoiding_count(n, j), "n={n} j={j}");
        }
    }
}
