use cellalg::cellular::*;
use cellalg::diagrams::build_quiver_example;
use cellalg::split::*;
use cellalg::{Element, Field, Matrix};

const F: Field = Field::Rational;

// basis order: a12a21, e1, a12, a21, a21a12, e2
const NAMES: [&str; 6] = ["a12a21", "e1", "a12", "a21", "a21a12", "e2"];

/// Products of the path algebra written out by hand (paths of length 3 vanish).
fn hand_product(x: &str, y: &str) -> Option<&'static str> {
    let table = [
        ("e1", "e1", "e1"),
        ("e1", "a12", "a12"),
        ("e1", "a12a21", "a12a21"),
        ("e2", "e2", "e2"),
        ("e2", "a21", "a21"),
        ("e2", "a21a12", "a21a12"),
        ("a12", "e2", "a12"),
        ("a12", "a21", "a12a21"),
        ("a21", "e1", "a21"),
        ("a21", "a12", "a21a12"),
        ("a12a21", "e1", "a12a21"),
        ("a21a12", "e2", "a21a12"),
    ];
    table.iter().find(|(a, b, _)| *a == x && *b == y).map(|(_, _, c)| *c)
}

#[test]
fn structure_constants_match_hand_table() {
    let (d, _) = build_quiver_example(F).unwrap();
    for (i, x) in NAMES.iter().enumerate() {
        for (j, y) in NAMES.iter().enumerate() {
            let expected = match hand_product(x, y) {
                Some(z) => Element::basis(F, NAMES.iter().position(|n| *n == z).unwrap()),
                None => Element::zero(),
            };
            assert_eq!(d.algebra().basis_product_element(i, j), expected, "{x}·{y}");
        }
    }
}

#[test]
fn datum_and_idempotents_are_admissible() {
    let (d, fam) = build_quiver_example(F).unwrap();
    assert!(validate_cell_datum(&d).is_valid());
    assert!(check_assumptions(&d, &fam).is_admissible());
}

#[test]
fn gram_matrices_and_lambda_zero() {
    let (d, _) = build_quiver_example(F).unwrap();
    let g = |c| gram_matrix(&d, c).unwrap().matrix;
    assert_eq!(g(0), Matrix::from_i64(F, &[&[0]]));
    assert_eq!(g(1), Matrix::from_i64(F, &[&[1, 0], &[0, 0]]));
    assert_eq!(g(2), Matrix::from_i64(F, &[&[1]]));
    assert_eq!(lambda_zero(&d), vec![1, 2]);
    assert!(simple_dim(&d, 0).is_err());
    // Δ(λ0) is one-dimensional, hence simple, yet λ0 ∉ Λ⁰
    assert_eq!(cell_module(&d, 0).unwrap().dim(), 1);
}

#[test]
fn radical_of_middle_cell_module_is_the_bottom_cell_module() {
    let (d, _) = build_quiver_example(F).unwrap();
    let rad = gram_matrix(&d, 1).unwrap().radical;
    assert_eq!(rad.dim(), 1);
    let homs = hom_space(&d, &cell_module(&d, 2).unwrap(), &cell_module(&d, 1).unwrap()).unwrap();
    assert_eq!(homs.dim, 1);
    let image = homs.basis[0].column_space();
    assert_eq!(image.dim(), 1);
    assert!(image.is_subspace_of(&rad));
}

#[test]
fn decomposition_matrix_and_blocks() {
    let (d, _) = build_quiver_example(F).unwrap();
    let dm = decomposition_matrix(&d).unwrap();
    assert_eq!(dm.columns, vec![1, 2]);
    assert_eq!(dm.entries, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    assert_eq!(dm.cartan, vec![vec![2, 1], vec![1, 2]]);
    assert!(dm.triangularity.unit_diagonal);
    let b = blocks(&d).unwrap();
    assert_eq!(b.blocks, vec![vec![1, 2]]);
    assert!(jacobson_radical(&d).unwrap().dim() == 4);
}

#[test]
fn localization_sets() {
    let (d, fam) = build_quiver_example(F).unwrap();
    let dec = IdempotentDecomposition::new(&d, fam).unwrap();
    assert_eq!(dec.lambda_set(0), &[0, 1]);
    assert_eq!(dec.lambda_set(1), &[1, 2]);
    assert_eq!(dec.i_set(1), &[0, 1]);
    for i in 0..2 {
        assert_eq!(dec.localize(i).unwrap().datum.dim(), 2);
    }
}

#[test]
fn theorem_checks_on_quiver() {
    let (d, fam) = build_quiver_example(F).unwrap();
    let dec = IdempotentDecomposition::new(&d, fam).unwrap();
    for c in 0..3 {
        assert!(dec.check_gram_direct_sum(c).unwrap().holds);
        assert!(dec.check_radical_decomposition(c).unwrap().holds);
    }
    assert!(dec.check_simple_dim_sum(0).is_err());
    assert!(dec.check_simple_dim_sum(1).unwrap().holds);
    assert!(dec.check_semisimple_equivalence().unwrap().consistent);
}

#[test]
fn hom_vanishing_fails_in_the_reverse_direction_here() {
    let (d, fam) = build_quiver_example(F).unwrap();
    let dec = IdempotentDecomposition::new(&d, fam).unwrap();
    // Hom(Δ(λ1), Δ(λ2)) = 0 but V(λ1,2) → V(λ2,2) is nonzero
    let h = dec.hom_vanishing(1, 2).unwrap();
    assert_eq!(h.global_dim, 0);
    assert!(h.local_dims.iter().any(|(_, k)| *k > 0));
    assert!(!h.equivalence_holds);
    let h = dec.hom_vanishing(2, 1).unwrap();
    assert_eq!(h.global_dim, 1);
    assert!(h.nonzero_restricts);
}

#[test]
fn extension_by_zero_need_not_intertwine() {
    let (d, fam) = build_quiver_example(F).unwrap();
    let dec = IdempotentDecomposition::new(&d, fam).unwrap();
    let tau = Matrix::from_i64(F, &[&[1]]);
    let ext = dec.extend_hom(&tau, 1, 2, 1).unwrap();
    assert!(!ext.intertwines);
    let back = dec.restrict_hom(&ext.matrix, 1, 2, 1).unwrap();
    assert_eq!(back.matrix, tau);
    assert!(back.intertwines);
}

#[test]
fn quiver_over_a_prime_field() {
    let (d, fam) = build_quiver_example(Field::prime(7).unwrap()).unwrap();
    assert!(validate_cell_datum(&d).is_valid());
    assert!(check_assumptions(&d, &fam).is_admissible());
    assert_eq!(lambda_zero(&d), vec![1, 2]);
    assert!(matches!(CellularStructure::new(&d), Err(cellalg::Error::Unsupported(_))));
}
