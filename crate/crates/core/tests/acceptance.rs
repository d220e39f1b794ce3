//! Acceptance suite: one line per criterion, then a summary.
//!
//! Each criterion has a pinned expected status. The run fails when any status
//! differs from its pin, so a criterion that cannot pass as stated stays
//! visibly red without breaking the build.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tannakit::coherence::examples::{counterexample, identity_exchanges, order_two_action};
use tannakit::coherence::random::{random_category, random_valid_action, IsoKind, RandomSpec};
use tannakit::coherence::combine_free_product;
use tannakit::diffmod::{
    check_contiguity, commute_up_to_gauge, hyper_companion, hyper_field, hyper_gauge, shift_scale_field, solve_gauge,
    twist, twist_by, DiffField, DiffModule, GaugeVersion,
};
use tannakit::field::rational::rat;
use tannakit::field::{parse_ratfunc, RatFunc, SubstEndo, Vars};
use tannakit::hopf::{
    comodule_axioms, l_filtration, ord, random_element, standard_comodule, twist_comodule, GRing, GlnHopf,
    DEFAULT_BASIS_CAP,
};
use tannakit::semigroup::{words_up_to, AbelianPresentation, Word};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Check = fn() -> Outcome;

fn counterexample_detection() -> Outcome {
    let d = counterexample().unwrap();
    let hex = d.check_hexagon().unwrap();
    let assoc = d.verify_associativity(1).unwrap();
    let id = identity_exchanges().unwrap();
    let hex_id = id.check_hexagon().unwrap();
    let assoc_id = id.verify_associativity(1).unwrap();
    let pass = !hex.passed() && !assoc.passed() && hex_id.passed() && assoc_id.passed();
    outcome(
        pass,
        format!(
            "hexagon failures {}, associativity failures {}/{}; identity isos: {} and {}",
            hex.failures.len(),
            assoc.failures.len(),
            assoc.checked,
            hex_id.failures.len(),
            assoc_id.failures.len()
        ),
    )
}

fn torsion_condition() -> Outcome {
    let status = |b: &str| order_two_action(b).unwrap().check_torsion().unwrap().passed();
    let (one, sq, t) = (status("1"), status("t^2"), status("t"));
    outcome(one && sq && !t, format!("b=1 {one}, b=t^2 {sq}, b=t {t}"))
}

fn hypergeometric_contiguity() -> Outcome {
    let f = hyper_field();
    let mut pass = true;
    let mut parts = Vec::new();
    for i in 1..=3 {
        let r = check_contiguity(&f, i, GaugeVersion::Printed).unwrap();
        // the pinned orientation is gauge(A, C_i) = σ_i(A)
        pass &= r.forward;
        parts.push(format!("C{i} forward {} reverse {}", r.forward, r.reverse));
    }
    let corrected: Vec<bool> =
        (1..=2).map(|i| check_contiguity(&f, i, GaugeVersion::Corrected).unwrap().forward).collect();
    parts.push(format!("C1, C2 with corrected (1,2) entry: forward {corrected:?}"));
    outcome(pass, parts.join("; "))
}

fn gauge_solver_recovery() -> Outcome {
    let f = hyper_field();
    let a = hyper_companion(&f);
    let sa = twist(&f, &a, "sigma3").unwrap();
    let den = f.parse("1 - z").unwrap().numer().clone();
    let Some(c) = solve_gauge(&f, &a, &sa, 1, &den).unwrap() else {
        return outcome(false, "no gauge matrix found");
    };
    let c3 = hyper_gauge(&f, 3, GaugeVersion::Printed).unwrap();
    let ratio = &c[(0, 0)] / &c3[(0, 0)];
    let constant = f.derivation().derive(&ratio).is_zero();
    let proportional = c.equals(&c3.scale(&ratio)).unwrap();
    outcome(constant && proportional, format!("C = ({ratio})·C3"))
}

fn commutation_criterion() -> Outcome {
    let ns: Vec<i64> = (-3..=3).collect();
    let good = commute_up_to_gauge(&rat(1, 2), 2, &ns).unwrap();
    let good_ok = good.uniform && good.rows.iter().all(|r| r.equivalent && r.verified);
    let bad = commute_up_to_gauge(&rat(1, 3), 2, &[1]).unwrap();
    let bad_ok = !bad.rows[0].equivalent;

    // the two twisted equations, compared with the closed forms
    let mut forms_ok = true;
    for (s1, s2) in [(rat(1, 2), 2i64), (rat(1, 3), 2), (rat(2, 7), -3)] {
        let f = shift_scale_field(&s1, s2).unwrap();
        let s1s = s1.to_string();
        for n in -3..=3i64 {
            let a = DiffModule::new(&f, f.parse_matrix(&[vec![format!("{n}*x + m")]]).unwrap()).unwrap();
            let t12 = twist(&f, &twist(&f, &a, "sigma2").unwrap(), "sigma1").unwrap();
            let t21 = twist(&f, &twist(&f, &a, "sigma1").unwrap(), "sigma2").unwrap();
            let tx2 = f.parse(&format!("({s2})^2*{n}*x + ({s2})*m + ({s1s})*({s2})^2*{n}")).unwrap();
            let tx3 = f.parse(&format!("({s2})^2*{n}*x + ({s2})*m + ({s1s})*({s2})*{n}")).unwrap();
            forms_ok &= t12.matrix()[(0, 0)] == tx2 && t21.matrix()[(0, 0)] == tx3;
        }
    }
    outcome(
        good_ok && bad_ok && forms_ok,
        format!(
            "s1=1/2,s2=2 uniform {}; s1=1/3,s2=2,n=1 kappa {} equivalent {}; closed forms {}",
            good.uniform, bad.rows[0].kappa, bad.rows[0].equivalent, forms_ok
        ),
    )
}

fn coherence_property() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20);
    let presentations =
        [AbelianPresentation::free(1), AbelianPresentation::free(2), AbelianPresentation::free(3), AbelianPresentation::new(1, vec![2]).unwrap()];
    let kinds = [IsoKind::Identity, IsoKind::Scalar, IsoKind::PadSwap];
    let mut checked = 0;
    let mut bad = Vec::new();
    // whether the torsion-exchange compatibility predicts the outcome
    let mut predicted = true;
    for k in 0..50 {
        let pres = Arc::new(presentations[k % presentations.len()].clone());
        let spec = RandomSpec { presentation: pres.clone(), kind: kinds[k % 3], max_pad: 1, transport: true };
        let twisted = rng.gen_bool(0.5);
        let cat = Arc::new(random_category(&mut rng, twisted));
        let d = random_valid_action(&mut rng, cat, &spec).unwrap();
        if !(d.check_hexagon().unwrap().passed() && d.check_torsion().unwrap().passed()) {
            bad.push(format!("#{k} invalid"));
            continue;
        }
        let max_len = if pres.num_generators() <= 3 { 3 } else { 2 };
        let rep = d.verify_associativity(max_len).unwrap();
        checked += rep.checked;
        predicted &= rep.passed() == d.check_torsion_exchange().unwrap().passed();
        if !rep.passed() {
            bad.push(format!("#{k} {}", pres));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "50 datasets, {checked} word triples, non-associative {bad:?}; torsion-exchange check predicts every outcome: {predicted}"
        ),
    )
}

fn free_product() -> Outcome {
    let mut rng = StdRng::seed_from_u64(70);
    let mut restrict_ok = true;
    let mut checked = 0;
    let mut assoc_ok = true;
    for k in 0..3 {
        let cat = Arc::new(random_category(&mut rng, true));
        let spec = |p: AbelianPresentation, kind| RandomSpec { presentation: Arc::new(p), kind, max_pad: 1, transport: true };
        let d1 = random_valid_action(&mut rng, cat.clone(), &spec(AbelianPresentation::free(2), IsoKind::PadSwap)).unwrap();
        let second = if k == 1 { AbelianPresentation::new(1, vec![2]).unwrap() } else { AbelianPresentation::new(0, vec![2]).unwrap() };
        let d2 = random_valid_action(&mut rng, cat, &spec(second, IsoKind::Scalar)).unwrap();
        let fp = combine_free_product(vec![d1.clone(), d2.clone()]).unwrap();
        restrict_ok &= fp.restrict().unwrap() == vec![d1, d2];
        let rep = fp.verify_associativity(4, 2).unwrap();
        checked += rep.checked;
        assoc_ok &= rep.passed();
    }
    outcome(restrict_ok && assoc_ok, format!("restrict {restrict_ok}, {checked} triples, associative {assoc_ok}"))
}

fn hopf_layer() -> Outcome {
    let mut rng = StdRng::seed_from_u64(80);
    let ring = GRing::new(Arc::new(AbelianPresentation::free(1)), 2);
    let h = GlnHopf::new(ring.clone());
    let words = words_up_to(&ring.pres, 2);
    let gens_ok = h.generators(&words).iter().all(|g| h.check(g).unwrap());
    let random_ok = (0..100).all(|_| h.check(&random_element(&mut rng, &ring, &words, 2, true)).unwrap());
    let mut ord_ok = true;
    for _ in 0..200 {
        let (f1, f2) = loop {
            let f1 = random_element(&mut rng, &ring, &words, 2, false);
            let f2 = random_element(&mut rng, &ring, &words, 2, false);
            if !f1.is_zero() && !f2.is_zero() {
                break (f1, f2);
            }
        };
        ord_ok &= ord(&f1.mul(&f2)).unwrap() == ord(&f1).unwrap().max(ord(&f2).unwrap());
    }
    let l = l_filtration(&ring, 0, 1, 1, DEFAULT_BASIS_CAP).unwrap();
    let l_ok = l.dim == 8 && l.passed();
    outcome(
        gens_ok && random_ok && ord_ok && l_ok,
        format!("generators {gens_ok}, 100 random {random_ok}, 200 ord pairs {ord_ok}, L_(0,1,1) dim {} certificate {}", l.dim, l.passed()),
    )
}

fn random_module(rng: &mut StdRng, f: &DiffField) -> DiffModule {
    let pool = ["0", "1", "-2", "x", "x^2 - 1", "1/x", "3/(x + 1)", "x/(x - 2)", "1/2"];
    let rows: Vec<Vec<&str>> = (0..2).map(|_| (0..2).map(|_| pool[rng.gen_range(0..pool.len())]).collect()).collect();
    DiffModule::new(f, f.parse_matrix(&rows).unwrap()).unwrap()
}

fn twist_functoriality() -> Outcome {
    let v = Vars::new(["x"]);
    let mut f = DiffField::d_by(&v, "x").unwrap();
    let shift = SubstEndo::with_images(&v, [("x", parse_ratfunc("x + 1", &v).unwrap())]).unwrap();
    let scale = SubstEndo::with_images(&v, [("x", parse_ratfunc("2*x", &v).unwrap())]).unwrap();
    f.register("sigma1", shift).unwrap();
    f.register("sigma2", scale).unwrap();
    let pairs = [("sigma1", "sigma2"), ("sigma2", "sigma1"), ("sigma2", "sigma2"), ("sigma1", "sigma1")];
    for (outer, inner) in pairs {
        f.register_composite(&format!("{outer}.{inner}"), outer, inner).unwrap();
    }
    // independent closed forms of the composites: x ↦ image, factor
    let oracle = |name: &str| -> (&str, i64) {
        match name {
            "sigma1.sigma2" => ("2*x + 2", 2),
            "sigma2.sigma1" => ("2*x + 1", 2),
            "sigma2.sigma2" => ("4*x", 4),
            _ => ("x + 2", 1),
        }
    };
    let mut rng = StdRng::seed_from_u64(90);
    let mut ok = true;
    for _ in 0..100 {
        let m = random_module(&mut rng, &f);
        for (outer, inner) in pairs {
            let name = format!("{outer}.{inner}");
            let stepwise = twist(&f, &twist(&f, &m, inner).unwrap(), outer).unwrap();
            let composed = twist_by(&f, &m, f.endo(&name).unwrap()).unwrap();
            let (img, lam) = oracle(&name);
            let s = SubstEndo::with_images(&v, [("x", parse_ratfunc(img, &v).unwrap())]).unwrap();
            let direct = m.matrix().map(&RatFunc::zero(&v), |e| s.apply(e).unwrap().scale(&rat(lam, 1)));
            ok &= stepwise.matrix().equals(composed.matrix()).unwrap() && composed.matrix().equals(&direct).unwrap();
        }
    }

    let ring = GRing::new(Arc::new(AbelianPresentation::new(0, vec![2]).unwrap()), 2);
    let e = Word::identity(&ring.pres);
    let a = Word::generator(&ring.pres, 1).unwrap();
    let std = standard_comodule(&ring, &e);
    let once = twist_comodule(&std, &a).unwrap();
    let twice = twist_comodule(&once, &a).unwrap();
    let comod_ok = twice == std && once != std && comodule_axioms(&once).unwrap().passed();
    outcome(ok && comod_ok, format!("100 modules x 4 composites {ok}; GL2 over Z/2 double twist {comod_ok}"))
}

fn main() {
    let criteria: [(&str, Check, Duration, bool); 9] = [
        ("counterexample detection", counterexample_detection, Duration::from_secs(1), true),
        ("torsion condition", torsion_condition, Duration::from_secs(1), true),
        // C1 and C2 as printed fail in both orientations; see the detail line
        ("hypergeometric contiguity", hypergeometric_contiguity, Duration::from_secs(10), false),
        ("gauge solver recovery", gauge_solver_recovery, Duration::from_secs(30), true),
        ("commutation criterion", commutation_criterion, Duration::from_secs(1), true),
        // hexagon and torsion do not control torsion generators next to
        // other generators; the failing datasets are the N x Z/2 ones
        ("coherence property", coherence_property, Duration::from_secs(60), false),
        ("free product", free_product, Duration::from_secs(30), true),
        ("difference Hopf layer", hopf_layer, Duration::from_secs(30), true),
        ("twist functoriality", twist_functoriality, Duration::from_secs(10), true),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (k, (name, check, budget, expected)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let pass = out.pass && took <= *budget;
        passed += usize::from(pass);
        let note = match (pass, *expected) {
            (true, true) => "",
            (false, false) => " (known failure)",
            _ => {
                unexpected += 1;
                " (UNEXPECTED)"
            }
        };
        println!(
            "criterion {}: {} {name}{note} [{:.2}s of {}s] {}",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
    }
    println!("{passed}/{} criteria pass, {unexpected} unexpected", criteria.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
