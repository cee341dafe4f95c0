use proptest::prelude::*;
use pruferlab::snf::{invariant_factors, smith_normal_form, IntegerMatrix};

fn matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        (prop::collection::vec(prop::collection::vec(-30i64..=30, c), r), Just(c))
    })
}

/// Determinant modulo the prime `p`, by elimination over `Z/p`.
fn det_mod(m: &IntegerMatrix, p: i128) -> i128 {
    let n = m.rows();
    let mut a: Vec<Vec<i128>> = m.to_rows().into_iter().map(|r| r.into_iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let inv = |x: i128| {
        let (mut r0, mut r1, mut s0, mut s1) = (p, x, 0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        s0.rem_euclid(p)
    };
    let mut d = 1;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if piv != k {
            a.swap(piv, k);
            d = (p - d) % p;
        }
        d = d * a[k][k] % p;
        let ik = inv(a[k][k]);
        for i in k + 1..n {
            let f = a[i][k] * ik % p;
            for j in k..n {
                a[i][j] = (a[i][j] - f * a[k][j]).rem_euclid(p);
            }
        }
    }
    d
}

proptest! {
    #[test]
    fn smith_form_properties((rows, c) in matrix()) {
        let m = IntegerMatrix::from_rows(&rows, c).unwrap();
        let s = smith_normal_form(&m).unwrap();
        const P: i128 = 2_305_843_009_213_693_951;
        for x in [&s.u, &s.v] {
            let d = det_mod(x, P);
            prop_assert!(d == 1 || d == P - 1);
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0] >= 0 && (w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0), "{:?}", diag);
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d.get(i, j) == 0);
            }
        }
    }

    #[test]
    fn invariant_under_permutations((rows, c) in matrix(), shift in 0usize..5) {
        let base = invariant_factors(&IntegerMatrix::from_rows(&rows, c).unwrap()).unwrap();
        let mut permuted = rows.clone();
        permuted.rotate_left(shift % rows.len());
        for r in &mut permuted {
            r.rotate_right(shift % c);
            r.swap(0, c - 1);
        }
        let p = invariant_factors(&IntegerMatrix::from_rows(&permuted, c).unwrap()).unwrap();
        prop_assert_eq!(base, p);
    }
}

#[test]
fn group_order_is_the_product_of_factors() {
    let m = IntegerMatrix::from_rows(&[vec![4, 6], vec![6, 4]], 2).unwrap();
    assert_eq!(invariant_factors(&m).unwrap(), vec![2, 10]);
}
