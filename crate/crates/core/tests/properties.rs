use cellalg::cellular::*;
use cellalg::diagrams::*;
use cellalg::split::*;
use cellalg::{Field, Matrix, Rational, Scalar};
use proptest::prelude::*;

const P: u64 = 101;

fn rational_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |v| {
            let rows = v
                .chunks(c)
                .map(|row| row.iter().map(|&(n, d)| Scalar::Q(Rational::new(n, d).unwrap())).collect())
                .collect();
            Matrix::from_rows(Field::Rational, rows).unwrap()
        })
    })
}

fn prime_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(0u64..P, r * c).prop_map(move |v| {
            let f = Field::prime(P).unwrap();
            let rows = v.chunks(c).map(|row| row.iter().map(|&x| f.from_i64(x as i64)).collect()).collect();
            Matrix::from_rows(f, rows).unwrap()
        })
    })
}

fn check_rank_nullity(m: &Matrix) -> Result<(), TestCaseError> {
    let null = m.nullspace();
    prop_assert_eq!(m.rank() + null.dim(), m.cols());
    for v in null.basis() {
        prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
    }
    let (r, pivots) = m.rref();
    let (rr, pivots2) = r.rref();
    prop_assert_eq!(&rr, &r);
    prop_assert_eq!(pivots, pivots2);
    Ok(())
}

/// Wide matrices with large entries take the fraction-free path.
fn big_rational_matrix() -> impl Strategy<Value = Matrix> {
    (8usize..12, 8usize..12, 0usize..4).prop_flat_map(|(r, c, dup)| {
        prop::collection::vec((-50i64..50, 1i64..9), r * c).prop_map(move |v| {
            let mut rows: Vec<Vec<Scalar>> = v
                .chunks(c)
                .map(|row| row.iter().map(|&(n, d)| Scalar::Q(Rational::new(n, d).unwrap())).collect())
                .collect();
            // force some rank deficiency
            for k in 0..dup.min(r - 1) {
                rows[k + 1] = rows[0].iter().map(|x| x * &Scalar::Q(Rational::from_int(k as i64 + 2))).collect();
            }
            Matrix::from_rows(Field::Rational, rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rank_nullity_over_q(m in rational_matrix()) {
        check_rank_nullity(&m)?;
    }

    #[test]
    fn rank_nullity_over_gf(m in prime_matrix()) {
        check_rank_nullity(&m)?;
    }

    #[test]
    fn gf_arithmetic_stays_reduced(a in 0u64..P, b in 0u64..P) {
        let f = Field::prime(P).unwrap();
        let (x, y) = (f.from_i64(a as i64), f.from_i64(b as i64));
        for z in [&x + &y, &x - &y, &x * &y] {
            match z {
                Scalar::Fp(v, p) => prop_assert!(v < p && p == P),
                Scalar::Q(_) => prop_assert!(false),
            }
        }
        if b != 0 {
            prop_assert!((&y * &y.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn fraction_free_rank_matches_modular_bound(m in big_rational_matrix()) {
        check_rank_nullity(&m)?;
        if let Some(r) = m.rank_mod(1_000_000_007) {
            prop_assert!(r <= m.rank());
        }
    }
}

/// Every family instance used by the examples, as (name, datum, idempotents).
fn instances() -> Vec<(String, CellDatum, Option<IdempotentFamily>)> {
    let f = Field::Rational;
    let mut out = Vec::new();
    let (d, fam) = build_quiver_example(f).unwrap();
    out.push(("quiver".to_string(), d, Some(fam)));
    for n in 1..=5 {
        let (d, fam) = build_matrix_algebra(n, f).unwrap();
        out.push((format!("M{n}"), d, Some(fam)));
    }
    for n in 1..=5 {
        for s in ["0", "1", "-1", "2", "3", "1/2"] {
            let delta = f.from_rational(&s.parse().unwrap()).unwrap();
            out.push((format!("TL{n}({s})"), build_tl(n, &delta).unwrap().datum, None));
        }
    }
    for n in 1..=3 {
        for (a, b) in [(3, 5), (1, 3), (0, 1)] {
            let bub = build_bubble(n, 2, f, &[f.from_i64(a), f.from_i64(b)]).unwrap();
            out.push((format!("T{n},2({a},{b})"), bub.datum, Some(bub.idempotents)));
        }
    }
    out
}

#[test]
fn every_instance_satisfies_the_cellular_properties() {
    for (name, d, fam) in instances() {
        assert!(validate_cell_datum(&d).is_valid(), "{name}");
        let count: usize = d.t_sets().iter().map(|t| t.len() * t.len()).sum();
        assert_eq!(count, d.dim(), "{name}");
        let g = check_gram_independence(&d, 50, 7).unwrap();
        assert!(g.holds(), "{name}: {:?}", g.failures);
        let m = check_module_axiom(&d, 100, 7).unwrap();
        assert!(m.holds(), "{name}: {:?}", m.failures);
        if let Some(fam) = fam {
            assert!(check_assumptions(&d, &fam).is_admissible(), "{name}");
        }
    }
}

#[test]
fn validation_detects_a_broken_involution() {
    let (d, _) = build_matrix_algebra(2, Field::Rational).unwrap();
    // swapping E_11 and E_12 is not an anti-automorphism
    let broken = d.with_star(vec![1, 0, 2, 3]).unwrap();
    let v = validate_cell_datum(&broken);
    assert!(!v.is_valid());
}

#[test]
fn validation_detects_a_wrong_product() {
    let (d, _) = build_matrix_algebra(2, Field::Rational).unwrap();
    let f = Field::Rational;
    let poset = d.poset().clone();
    // E_12 E_21 = 2 E_11 breaks associativity and the unit
    let bad = CellDatum::from_products(poset, d.t_sets().to_vec(), f, d.unit().clone(), |a, b| {
        let x = d.algebra().basis_product_element(d.index(a.cell, a.s, a.t), d.index(b.cell, b.s, b.t));
        if (a.s, a.t, b.s, b.t) == (0, 1, 1, 0) {
            x.scale(&f.from_i64(2))
        } else {
            x
        }
    })
    .unwrap();
    assert!(!validate_cell_datum(&bad).is_valid());
}
