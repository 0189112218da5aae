//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use germlab::connectivity::{
    analyze, km_top_degree, window_image, window_km, DSpec, InstDim, Theorem, NOT_DIMENSIONALLY_CORRECT,
};
use germlab::germs::{discriminant, image, milnor_number, GermFile};
use germlab::icss::{
    a_mu_betti, alt_projector, check_augmented_exactness, circle_subdivision_model, run_icss,
    transverse_double_point_absolute, EquivariantComplex, IcssModel,
};
use germlab::linalg::Matrix;
use germlab::monodromy::{monodromy_bounds, random_suite, SuiteKind};
use germlab::multiple_points::{check_specialization, gaffney_multiple_points, strict_multiple_points, Route};
use germlab::poly::{Ideal, Ring, Verdict, Q};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fixture(rel: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn germ_file(name: &str) -> Result<GermFile, String> {
    GermFile::from_json_str(&fixture(&format!("germs/{name}"))).map_err(err)
}

fn set(v: &[u32]) -> BTreeSet<u32> {
    v.iter().copied().collect()
}

fn degree_window_fixture() -> Outcome {
    let w = window_km(16, 21, InstDim::Dim(2), true).map_err(err)?;
    ensure!(w.degrees == set(&[3, 4, 6, 7, 8, 10, 11, 12]), "got {w}");
    Ok(())
}

fn cuspidal_edge_suite() -> Outcome {
    let edge = germ_file("cuspidal_edge.json")?.germ;
    let d2 = gaffney_multiple_points(&edge, 2, Route::DividedDifferences, None).map_err(err)?;
    ensure!(d2.dim().value() == Some(1), "dim D^2 = {:?}", d2.dim());
    ensure!(d2.spaces[0].expected_dim == 1, "expected {}", d2.spaces[0].expected_dim);
    let strict = strict_multiple_points(&edge, 2).map_err(err)?;
    ensure!(
        strict.iter().all(|s| s.dim.is_empty()),
        "strict double points are not empty"
    );
    let a = analyze(&edge, DSpec::Given(InstDim::Dim(1)), None, None).map_err(err)?;
    let kma = a.window(Theorem::Image).ok_or("no KMA window")?;
    ensure!(kma.degrees == set(&[1, 2]), "KMA window {kma}");
    // a circle in degree 1 and a bouquet of spheres in degree 2
    ensure!(
        kma.contains(1) && kma.contains(2),
        "perturbation outcomes outside {kma}"
    );

    let ext = germ_file("cuspidal_edge_trivial_extension.json")?.germ;
    let d2 = gaffney_multiple_points(&ext, 2, Route::DividedDifferences, None).map_err(err)?;
    let space = &d2.spaces[0];
    ensure!(
        space.dim.value() == Some(1) && space.expected_dim == 0,
        "dim {:?} vs {}",
        space.dim,
        space.expected_dim
    );
    let line = Ideal::parse(space.ideal.ring(), &["x_1 - x_2", "y_1", "y_2"]).map_err(err)?;
    ensure!(
        line.contains_ideal(&space.ideal).map_err(err)?,
        "D^2 does not contain the line y = 0"
    );
    let a = analyze(&ext, DSpec::Given(InstDim::Dim(1)), None, None).map_err(err)?;
    let dc = a
        .dimensional_correctness
        .as_ref()
        .ok_or("no dimensional correctness report")?;
    ensure!(!dc.correct, "reported dimensionally correct");
    for t in [Theorem::HigherCodimension, Theorem::HigherCodimensionRefined] {
        let w = a.windows.iter().find(|w| w.theorem == t).ok_or("missing KM entry")?;
        ensure!(
            !w.applicable && w.reason.as_deref() == Some(NOT_DIMENSIONALLY_CORRECT),
            "{t} not refused"
        );
    }
    Ok(())
}

fn specialization_suite() -> Outcome {
    let u = germ_file("specialization_family.json")?
        .unfolding
        .ok_or("fixture has no unfolding")?;
    let r = check_specialization(&u, 2, &Q::from_integer(0.into())).map_err(err)?;
    ensure!(r.verdict == Verdict::Holds, "Gaffney verdict {:?}", r.verdict);
    ensure!(
        r.strict_verdict == Verdict::Fails,
        "strict verdict {:?}",
        r.strict_verdict
    );
    Ok(())
}

fn discriminant_dimension() -> Outcome {
    let whitney = germ_file("whitney_cusp.json")?.germ;
    let delta = discriminant(&whitney).map_err(err)?;
    let expected = Ideal::parse(whitney.target(), &["4*X^3 + 27*Y^2"]).map_err(err)?;
    ensure!(
        delta.ideal.equals(&expected).map_err(err)?,
        "discriminant {:?}",
        delta.ideal.basis_strings()
    );
    ensure!(delta.dim_at_origin.value() == Some(1), "dim {:?}", delta.dim_at_origin);
    ensure!(delta.dim_delta_expected == Some(true), "dim is not p - 1");

    let cubic = germ_file("twisted_cubic_cone.json")?.germ;
    let img = image(&cubic).map_err(err)?;
    let ring: &Ring = img.ring();
    ensure!(ring.nvars() == 4, "target has {} variables", ring.nvars());
    for q in ["X*Z - Y^2", "Y*W - Z^2", "X*W - Y*Z"] {
        let f = ring.parse(q).map_err(err)?;
        ensure!(img.contains(&f).map_err(err)?, "image ideal misses {q}");
    }
    ensure!(img.dim().map_err(err)? == Some(2), "dim {:?}", img.dim());
    ensure!(img.dim_at_origin().map_err(err)?.value() == Some(2), "local dim");
    Ok(())
}

fn icss_suspension() -> Outcome {
    for (file, g, mu, betti) in [
        ("models/bigerm_xy.json", "x*y", 1, vec![0, 0, 1]),
        ("models/bigerm_cusp.json", "x^2 + y^3", 2, vec![0, 0, 2]),
    ] {
        let r = Ring::new(["x", "y"]).map_err(err)?;
        let oracle = milnor_number(&r.parse(g).map_err(err)?).map_err(err)?;
        ensure!(oracle == Some(mu), "Milnor number of {g}: {oracle:?}");
        let model = IcssModel::from_json_str(&fixture(file)).map_err(err)?;
        let ss = run_icss(&model).map_err(err)?;
        ensure!(ss.total_cohomology == betti, "{file}: {:?}", ss.total_cohomology);
        ensure!(a_mu_betti(2, mu)[1] == betti[2], "suspension shift for {g}");
        let e1 = ss.page(1).ok_or("no first page")?;
        ensure!(e1.entries == ss.e_infinity, "{file}: no collapse at page one");
    }
    Ok(())
}

fn alternating_properties() -> Outcome {
    let model = circle_subdivision_model().map_err(err)?;
    let fiber = &model.column(2).fiber;
    for i in 0..fiber.len() as i64 {
        let p = fiber.alt_projector(i).map_err(err)?;
        ensure!(&p * &p == p, "projector in degree {i} is not idempotent");
        let next = fiber.alt_projector(i + 1).map_err(err)?;
        let d = fiber.d(i);
        ensure!(&next * &d == &d * &p, "projector does not commute with d in degree {i}");
    }
    for k in 2..=4 {
        let c = EquivariantComplex::with_zero_differential(vec![3], k, EquivariantComplex::trivial_action(&[3], k))
            .map_err(err)?;
        ensure!(
            c.alt_projector(0).map_err(err)?.is_zero(),
            "diagonal stalk survives for k = {k}"
        );
    }
    let gens = vec![Matrix::identity(2)];
    ensure!(alt_projector(&gens, 2, 2).map_err(err)?.is_zero(), "trivial action");

    let t = transverse_double_point_absolute().map_err(err)?;
    let r = check_augmented_exactness(&t).map_err(err)?;
    ensure!(
        r.verdict == Verdict::Holds,
        "augmented complex {:?} vs {:?}",
        r.computed,
        r.expected
    );
    let neg = check_augmented_exactness(&t.with_zero_faces()).map_err(err)?;
    ensure!(neg.verdict == Verdict::Fails, "negative control passed");
    Ok(())
}

fn monodromy_suite() -> Outcome {
    for (kind, cases) in [
        (SuiteKind::Cm1, 200),
        (SuiteKind::Cm2, 200),
        (SuiteKind::Conjugation, 50),
    ] {
        let r = random_suite(kind, 2024, cases, 6).map_err(err)?;
        ensure!(
            r.all_passed(),
            "{kind:?}: {} of {} passed, {:?}",
            r.passed,
            r.cases,
            r.failures
        );
        ensure!(
            r.certificates >= cases,
            "{kind:?}: only {} certificates",
            r.certificates
        );
    }
    Ok(())
}

fn bound_formulas() -> Outcome {
    for ell in 1..=10u64 {
        let b = monodromy_bounds(2, 3, ell, false).map_err(err)?;
        let sum: u64 = (1..=ell).sum();
        ensure!(b.general_bound == sum, "ell = {ell}: {} vs {sum}", b.general_bound);
    }
    for (n, p, table) in [(2u64, 4u64, vec![(1, 1)]), (16, 21, vec![(12, 12), (8, 7), (4, 2)])] {
        let b = monodromy_bounds(n, p, 1, true).map_err(err)?;
        let got: Vec<(u64, u64)> = b
            .isolated
            .ok_or("no isolated bounds")?
            .iter()
            .map(|x| (x.degree, x.bound))
            .collect();
        ensure!(got == table, "({n}, {p}): {got:?}");
    }
    Ok(())
}

fn window_properties() -> Outcome {
    for n in 1..=20usize {
        for p in n + 1..=25 {
            let mut prev: Option<(BTreeSet<u32>, BTreeSet<u32>)> = None;
            for d in 0..=5u32 {
                let d_ = InstDim::Dim(d);
                if p == n + 1 {
                    let top = *window_image(n, d_).degrees.iter().max().ok_or("empty KMA window")?;
                    ensure!(
                        km_top_degree(n, p, 2) == top as i64,
                        "n = {n}: KM top {} vs KMA {top}",
                        km_top_degree(n, p, 2)
                    );
                    continue;
                }
                let plain = window_km(n, p, d_, false).map_err(err)?.degrees;
                let refined = window_km(n, p, d_, true).map_err(err)?.degrees;
                ensure!(refined.is_subset(&plain), "refined not inside plain at ({n}, {p}, {d})");
                if let Some((pp, pr)) = &prev {
                    ensure!(
                        pp.is_subset(&plain) && pr.is_subset(&refined),
                        "not monotone at ({n}, {p}, {d})"
                    );
                }
                prev = Some((plain, refined));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("degree window fixture", degree_window_fixture),
        ("cuspidal edge suite", cuspidal_edge_suite),
        ("specialization suite", specialization_suite),
        ("discriminant dimension", discriminant_dimension),
        ("ICSS suspension", icss_suspension),
        ("alternating complex properties", alternating_properties),
        ("monodromy module suite", monodromy_suite),
        ("monodromy bound formulas", bound_formulas),
        ("window consistency", window_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".to_string()));
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(()) => println!("PASS {} {name} ({ms:.1} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name} ({ms:.1} ms): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
