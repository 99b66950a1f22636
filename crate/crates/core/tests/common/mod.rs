#![allow(dead_code)]

use maxplus::{GenPerm, Matrix, MaxPlus};
use proptest::prelude::*;

/// Multiples of 1/4 in [-lim, lim]; sums of these are exact in f64.
pub fn quarter(lim: i32) -> impl Strategy<Value = f64> {
    (-4 * lim..=4 * lim).prop_map(|q| q as f64 / 4.0)
}

pub fn finite_matrix(n: std::ops::RangeInclusive<usize>, lim: i32) -> impl Strategy<Value = Matrix> {
    n.prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(quarter(lim), n), n)
            .prop_map(|rows| Matrix::from_rows(&rows).unwrap())
    })
}

pub fn integer_matrix(n: std::ops::RangeInclusive<usize>, lim: i32) -> impl Strategy<Value = Matrix> {
    n.prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec((-lim..=lim).prop_map(f64::from), n), n)
            .prop_map(|rows| Matrix::from_rows(&rows).unwrap())
    })
}

/// Square matrix with roughly a third of its entries ε.
pub fn sparse_matrix(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Matrix> {
    n.prop_flat_map(|n| {
        prop::collection::vec(
            prop::collection::vec(
                prop_oneof![2 => quarter(10), 1 => Just(f64::NEG_INFINITY)],
                n,
            ),
            n,
        )
        .prop_map(|rows| Matrix::from_rows(&rows).unwrap())
    })
}

pub fn diagonal(n: std::ops::RangeInclusive<usize>, lim: i32) -> impl Strategy<Value = Vec<f64>> {
    n.prop_flat_map(move |n| prop::collection::vec(quarter(lim), n))
}

pub fn genperm(n: usize) -> impl Strategy<Value = GenPerm> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(quarter(10), n),
    )
        .prop_map(|(perm, weights)| GenPerm::new(perm, weights).unwrap())
}

pub fn matrix_and_genperm(
    n: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (Matrix, GenPerm)> {
    n.prop_flat_map(|n| (finite_matrix(n..=n, 10), genperm(n)))
}

/// diag(p) ⊗ pdiag(d) ⊗ diag(p)^{-1}, returned with d.
pub fn pdiagable(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Matrix, Vec<f64>)> {
    n.prop_flat_map(|n| {
        (
            prop::collection::vec(quarter(5), n),
            prop::collection::vec(quarter(10), n),
        )
            .prop_map(|(d, p)| {
                let a = maxplus::conjugate(&Matrix::pdiag(&d), &GenPerm::diagonal(p).unwrap())
                    .unwrap();
                (a, d)
            })
    })
}

pub fn grid(a: &Matrix) -> Vec<Vec<f64>> {
    a.to_f64_rows()
}

pub fn values(v: &[MaxPlus]) -> Vec<f64> {
    v.iter().map(|x| x.value()).collect()
}

pub fn basis_values(b: &[Vec<MaxPlus>]) -> Vec<Vec<f64>> {
    b.iter().map(|v| values(v)).collect()
}
