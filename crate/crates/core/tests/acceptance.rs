//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cellalg::cellular::*;
use cellalg::diagrams::*;
use cellalg::split::*;
use cellalg::{Field, Matrix, ModuleRep, Rational, Scalar};

const F: Field = Field::Rational;
const TL_DELTAS: [&str; 6] = ["0", "1", "-1", "2", "3", "1/2"];
const BUBBLE_PARAMS: [(i64, i64); 3] = [(3, 5), (1, 3), (0, 1)];

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn q(s: &str) -> Scalar {
    F.from_rational(&s.parse::<Rational>().unwrap()).unwrap()
}

fn bubble(n: usize, a: i64, b: i64) -> Result<Bubble, String> {
    ok(build_bubble(n, 2, F, &[F.from_i64(a), F.from_i64(b)]), "build bubble")
}

fn quiver() -> Check {
    let (d, fam) = ok(build_quiver_example(F), "build")?;
    ensure!(validate_cell_datum(&d).is_valid(), "datum invalid");
    ensure!(check_assumptions(&d, &fam).is_admissible(), "assumptions fail");
    ensure!(lambda_zero(&d) == vec![1, 2], "Λ⁰ = {:?}", lambda_zero(&d));
    ensure!(ok(cell_module(&d, 0), "Δ(λ0)")?.dim() == 1, "Δ(λ0) not one-dimensional");
    let expected = [
        Matrix::from_i64(F, &[&[0]]),
        Matrix::from_i64(F, &[&[1, 0], &[0, 0]]),
        Matrix::from_i64(F, &[&[1]]),
    ];
    for (c, g) in expected.iter().enumerate() {
        ensure!(&ok(gram_matrix(&d, c), "gram")?.matrix == g, "Gram matrix of cell {c}");
    }
    let rad = ok(gram_matrix(&d, 1), "gram")?.radical;
    ensure!(rad.dim() == 1, "dim Rad Δ(λ1) = {}", rad.dim());
    let homs = ok(hom_space(&d, &cell_module(&d, 2).unwrap(), &cell_module(&d, 1).unwrap()), "hom")?;
    ensure!(homs.dim == 1, "dim Hom(Δ(λ2), Δ(λ1)) = {}", homs.dim);
    ensure!(homs.basis[0].column_space().is_subspace_of(&rad), "image is not the radical");
    ensure!(ok(blocks(&d), "blocks")?.same_block(1, 2), "λ1, λ2 in different blocks");
    let dec = ok(IdempotentDecomposition::new(&d, fam), "decomposition")?;
    ensure!(dec.lambda_set(0) == [0, 1] && dec.lambda_set(1) == [1, 2], "localization sets");
    Ok(())
}

fn matrix_algebras() -> Check {
    for n in 1..=5 {
        let (d, fam) = ok(build_matrix_algebra(n, F), "build")?;
        ensure!(ok(is_semisimple(&d), "gram verdict")?.semisimple, "M{n} not semisimple by Gram");
        ensure!(ok(gram_matrix(&d, 0), "gram")?.matrix.det().ok() == Some(F.one()), "M{n} Gram det ≠ 1");
        ensure!(ok(jacobson_radical(&d), "oracle")?.dim() == 0, "M{n} oracle radical nonzero");
        let dec = ok(IdempotentDecomposition::new(&d, fam), "decomposition")?;
        for i in 0..n {
            ensure!(ok(dec.local(i), "localize")?.datum.dim() == 1, "M{n} corner {i} not one-dimensional");
        }
        let eq = ok(dec.check_semisimple_equivalence(), "equivalence")?;
        ensure!(eq.consistent && eq.parent.semisimple, "M{n} equivalence");
    }
    Ok(())
}

fn temperley_lieb() -> Check {
    for n in 1..=6 {
        for s in TL_DELTAS {
            let d = ok(build_tl(n, &q(s)), "build")?.datum;
            let gram = ok(is_semisimple(&d), "gram verdict")?.semisimple;
            let oracle = ok(jacobson_radical(&d), "oracle")?.dim() == 0;
            ensure!(gram == oracle, "TL{n}({s}): Gram says {gram}, trace form says {oracle}");
            if ["2", "3", "1/2"].contains(&s) {
                ensure!(gram, "TL{n}({s}) should be semisimple");
            }
        }
    }
    for s in TL_DELTAS {
        let delta = q(s);
        let d = ok(build_tl(3, &delta), "build")?.datum;
        let c = ok(d.cell_index("1"), "TL3 cell 1")?;
        let det = gram_matrix(&d, c).and_then(|g| g.matrix.det()).ok();
        ensure!(det == Some(&delta * &delta - F.one()), "TL3({s}) one-line det = {det:?}");
    }
    ensure!(!ok(is_semisimple(&build_tl(3, &q("1")).unwrap().datum), "tl3")?.semisimple, "TL3(1) semisimple");
    ensure!(ok(is_semisimple(&build_tl(3, &q("3")).unwrap().datum), "tl3")?.semisimple, "TL3(3) not semisimple");
    Ok(())
}

fn bubble_theorems() -> Check {
    for n in 1..=4 {
        for (a, b) in BUBBLE_PARAMS {
            let name = format!("T{n},2({a},{b})");
            let bub = bubble(n, a, b)?;
            let d = &bub.datum;
            let dec = ok(IdempotentDecomposition::new(d, bub.idempotents.clone()), "decomposition")?;
            for c in 0..d.num_cells() {
                let l = d.label(c);
                ensure!(ok(dec.check_gram_direct_sum(c), "gram sum")?.holds, "{name} {l}: Gram direct sum");
                ensure!(ok(dec.check_radical_decomposition(c), "radical")?.holds, "{name} {l}: radical");
                if ok(gram_matrix(d, c), "gram")?.rank > 0 {
                    ensure!(ok(dec.check_simple_dim_sum(c), "simple dims")?.holds, "{name} {l}: simple dims");
                }
            }
            let eq = ok(dec.check_semisimple_equivalence(), "equivalence")?;
            ensure!(eq.consistent, "{name}: semisimplicity of A and the corners disagree");
            if (a, b) == (3, 5) {
                ensure!(eq.parent.semisimple, "{name} not semisimple");
            }
            for i in 0..dec.len() {
                let t = ok(check_bubble_localization(&bub, ok(dec.local(i), "localize")?), "tensor check")?;
                ensure!(t.holds(), "{name} colour {}: corner is not a tensor product", dec.label(i));
            }
        }
    }
    Ok(())
}

fn bubble_blocks() -> Check {
    for n in 1..=4 {
        for (a, b) in BUBBLE_PARAMS {
            let bub = bubble(n, a, b)?;
            let d = &bub.datum;
            if lambda_zero(d).len() != d.num_cells() {
                continue;
            }
            let dec = ok(IdempotentDecomposition::new(d, bub.idempotents.clone()), "decomposition")?;
            let loc = ok(dec.blocks_via_localization(), "localized blocks")?;
            ensure!(!loc.advisory, "T{n},2({a},{b}): advisory with Λ = Λ⁰");
            ensure!(loc.blocks == ok(blocks(d), "blocks")?, "T{n},2({a},{b}): block partitions differ");
        }
    }
    let bub = bubble(3, 1, 3)?;
    let d = &bub.datum;
    let (c30, c10) = (d.cell_index("(3,0)").unwrap(), d.cell_index("(1,0)").unwrap());
    ensure!(ok(blocks(d), "blocks")?.same_block(c30, c10), "T3,2(1,3): (3,0) and (1,0) not linked");
    Ok(())
}

fn partition_algebras() -> Check {
    let ints = |v: &[i64]| v.iter().map(|&x| F.from_i64(x)).collect::<Vec<_>>();
    let pa = ok(build_multicolour_partition(2, 2, F, &ints(&[5, 7])), "build")?;
    ensure!(pa.dim() == 94, "dim P2,2 = {}", pa.dim());
    ensure!(pa.idempotents.len() == 4, "{} idempotents", pa.idempotents.len());
    ensure!(pa.check_idempotents().holds(), "idempotents are not a complete orthogonal family");
    for w in 0..pa.idempotents.len() {
        let r = ok(check_localization_iso(&pa, w), "localization")?;
        ensure!(r.holds(), "colour {}: localization iso fails", pa.idempotents.labels[w]);
    }
    let o = ok(oracle_semisimple_partition(2, 2, F, &ints(&[5, 7]), DEFAULT_ORACLE_CAP), "oracle")?;
    ensure!(o.semisimple, "P2,2(5,7) not semisimple");
    let o = ok(oracle_semisimple_partition(1, 1, F, &ints(&[0]), DEFAULT_ORACLE_CAP), "oracle")?;
    ensure!(!o.semisimple, "P1,1(0) semisimple");
    Ok(())
}

/// Every instance used above that carries a cellular datum.
fn instances() -> Result<Vec<(String, CellDatum, Option<IdempotentFamily>)>, String> {
    let mut out = Vec::new();
    let (d, fam) = ok(build_quiver_example(F), "quiver")?;
    out.push(("quiver".to_string(), d, Some(fam)));
    for n in 1..=5 {
        let (d, fam) = ok(build_matrix_algebra(n, F), "matrix")?;
        out.push((format!("M{n}"), d, Some(fam)));
    }
    for n in 1..=6 {
        for s in TL_DELTAS {
            out.push((format!("TL{n}({s})"), ok(build_tl(n, &q(s)), "tl")?.datum, None));
        }
    }
    for n in 1..=4 {
        for (a, b) in BUBBLE_PARAMS {
            let bub = bubble(n, a, b)?;
            out.push((format!("T{n},2({a},{b})"), bub.datum, Some(bub.idempotents)));
        }
    }
    Ok(out)
}

fn properties() -> Check {
    for (name, d, fam) in instances()? {
        ensure!(validate_cell_datum(&d).is_valid(), "{name}: datum invalid");
        let count: usize = d.t_sets().iter().map(|t| t.len() * t.len()).sum();
        ensure!(count == d.dim(), "{name}: Σ|T(λ)|² = {count} ≠ {}", d.dim());
        ensure!(ok(check_gram_independence(&d, 50, 11), "gram")?.holds(), "{name}: Gram form");
        ensure!(ok(check_module_axiom(&d, 100, 11), "module")?.holds(), "{name}: module axiom");
        let Some(fam) = fam else { continue };
        ensure!(check_assumptions(&d, &fam).is_admissible(), "{name}: assumptions");
        let dec = ok(IdempotentDecomposition::new(&d, fam), "decomposition")?;
        for i in 0..dec.len() {
            let loc = ok(dec.local(i), "localize")?;
            for &l in dec.lambda_set(i) {
                for &m in dec.lambda_set(i) {
                    let (vl, vm) = (ok(loc.v_module(l), "V")?, ok(loc.v_module(m), "V")?);
                    for tau in ok(cellalg::algebra::hom_space(vl.module(), vm.module()), "hom")? {
                        let ext = ok(dec.extend_hom(&tau, l, m, i), "extend")?;
                        let back = ok(dec.restrict_hom(&ext.matrix, l, m, i), "restrict")?.matrix;
                        ensure!(back == tau, "{name}: restrict ∘ extend ≠ id");
                    }
                }
            }
        }
    }
    Ok(())
}

fn regular_multiplicities() -> Check {
    for (name, d, _) in instances()? {
        if d.dim() > 120 {
            continue;
        }
        let s = ok(CellularStructure::new(&d), "structure")?;
        let dm = ok(s.decomposition_matrix(), "decomposition matrix")?;
        ensure!(dm.triangularity.unit_diagonal, "{name}: some d(λ,λ) ≠ 1");
        let reg = ok(s.loewy_series(&ModuleRep::regular(d.algebra())), "regular Loewy series")?;
        for &mu in &dm.columns {
            let expected: usize = (0..d.num_cells()).map(|l| d.cell_size(l) * dm.entry(l, mu)).sum();
            let observed = reg.multiplicity(mu);
            ensure!(expected == observed, "{name} {}: [A : L] = {observed}, expected {expected}", d.label(mu));
        }
        let t = &dm.triangularity;
        if !(t.nonzero_implies_le || t.nonzero_implies_ge) {
            println!("    note: {name}: decomposition matrix is not triangular in either order");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 8] = [
        ("quiver example", Duration::from_secs(1), quiver),
        ("matrix algebras", Duration::from_secs(5), matrix_algebras),
        ("Temperley-Lieb Gram versus trace form", Duration::from_secs(30), temperley_lieb),
        ("bubble algebra theorem suite", Duration::from_secs(60), bubble_theorems),
        ("blocks through localization", Duration::from_secs(60), bubble_blocks),
        ("two-colour partition algebra", Duration::from_secs(120), partition_algebras),
        ("property suites", Duration::from_secs(120), properties),
        ("regular module multiplicities", Duration::from_secs(120), regular_multiplicities),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let verdict = match &result {
            Ok(()) if took <= *budget => "pass".to_string(),
            Ok(()) => format!("FAIL (over the {budget:?} budget)"),
            Err(e) => format!("FAIL ({e})"),
        };
        if verdict != "pass" {
            failed += 1;
        }
        println!("criterion {}: {verdict} [{name}, {:.2}s]", k + 1, took.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
