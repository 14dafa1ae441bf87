//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria 3, 4 and 7 are known to fail on the source tables themselves;
//! they are evaluated in full and reported, but only the others are asserted.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use nlie::catalog::{all_labels, build, list_for, Label};
use nlie::classify::classify;
use nlie::fingerprint::{fingerprint, FingerprintOptions};
use nlie::iso::{signed_perm_iso, verify_witness};
use nlie::linalg::unit_vector;
use nlie::sample::audit;
use nlie::{BasisChange, Field, NLieAlgebra, NilpotencyClass, PrimeField, Rationals, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(id: usize, name: &str, start: Instant, o: &Outcome) {
    let status = if o.pass { "PASS" } else { "FAIL" };
    println!("{status} criterion {id} ({name}, {:.1}s): {}", start.elapsed().as_secs_f64(), o.detail);
}

fn random_change<F: Field>(f: &F, d: usize, rng: &mut ChaCha8Rng) -> BasisChange<F> {
    loop {
        let cols: Vec<_> = (0..d).map(|_| (0..d).map(|_| f.random(rng)).collect()).collect();
        if let Ok(p) = BasisChange::from_columns(f, d, &cols) {
            return p;
        }
    }
}

/// A random integer matrix of determinant ±1: a signed permutation followed
/// by small elementary column operations.
fn unimodular(d: usize, rng: &mut ChaCha8Rng) -> BasisChange<Rationals> {
    let f = Rationals;
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut cols: Vec<Vec<_>> = perm
        .iter()
        .map(|&p| {
            let mut c = unit_vector(&f, d, p);
            if rng.gen_bool(0.5) {
                c[p] = f.neg(&c[p]);
            }
            c
        })
        .collect();
    for _ in 0..2 * d {
        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if i == j {
            continue;
        }
        let c = f.from_i64(rng.gen_range(-2..=2));
        let add: Vec<_> = cols[j].iter().map(|x| f.mul(&c, x)).collect();
        cols[i] = cols[i].iter().zip(&add).map(|(a, b)| f.add(a, b)).collect();
    }
    BasisChange::from_columns(&f, d, &cols).expect("unimodular")
}

fn table<F: Field>(f: &F, n: usize, d: usize, rows: &[(Vec<usize>, usize)]) -> NLieAlgebra<F> {
    let mut a = NLieAlgebra::new(f, n, d).unwrap();
    for (args, target) in rows {
        a.set_monomial(args, *target).unwrap();
    }
    a
}

fn catalog_validity() -> Outcome {
    let fields = [PrimeField::new(2).unwrap(), PrimeField::new(3).unwrap(), PrimeField::new(5).unwrap()];
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut class_three = BTreeSet::new();
    fn check<F: Field>(f: &F, label: &Label, bad: &mut Vec<String>, class_three: &mut BTreeSet<String>) {
        let a = build(label, f).unwrap();
        if !a.check_alternating() || !a.check_filippov().passed() {
            bad.push(format!("{label} over {}", f.spec()));
        }
        match a.nilpotency_class() {
            NilpotencyClass::Class(2) => {}
            NilpotencyClass::Class(3) if !label.is_class_two() => {
                class_three.insert(label.to_string());
            }
            c => bad.push(format!("{label} over {} has class {c:?}", f.spec())),
        }
    }
    for n in 2..=5 {
        for label in all_labels(n) {
            check(&Rationals, &label, &mut bad, &mut class_three);
            for f in &fields {
                check(f, &label, &mut bad, &mut class_three);
            }
            checked += 4;
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{checked} builds alternating and Filippov; class two except the nilpotent d = n + 2 entry {:?} (class 3); bad: {bad:?}",
            class_three
        ),
    }
}

fn invariant_dims() -> Outcome {
    let f = Rationals;
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 3..=5 {
        // (k, expected dim Z, expected dim A²)
        let expect: [(usize, Option<usize>, Option<usize>); 6] =
            [(1, Some(4), None), (2, Some(3), None), (4, Some(4), None), (5, Some(3), None), (6, Some(3), None), (7, None, Some(4))];
        for (k, z, u) in expect {
            let a = build(&Label::family(n, 5, k), &f).unwrap();
            count += 1;
            if z.is_some_and(|z| a.center().dim() != z) || u.is_some_and(|u| a.derived_algebra().dim() != u) {
                bad.push(format!("A({n},{},{k})", n + 5));
            }
        }
    }
    let a = build(&Label::A387, &f).unwrap();
    let (z, u) = (a.center(), a.derived_algebra());
    count += 1;
    if z.dim() != 2 || u.dim() != 2 || !u.is_subspace_of(&z).unwrap() {
        bad.push("A_387".into());
    }
    Outcome { pass: bad.is_empty(), detail: format!("{count} tables checked, mismatches {bad:?}") }
}

fn central_line_dichotomy<F: Field>(f: &F, lines: &[(i64, i64)]) -> Result<BTreeSet<String>, String> {
    let a = build(&Label::A387, f).unwrap();
    let mut seen = BTreeSet::new();
    for &(x, y) in lines {
        let mut v = vec![f.zero(); 8];
        v[6] = f.from_i64(x);
        v[7] = f.from_i64(y);
        let line = Subspace::span(f, 8, &[v]).unwrap();
        let (q, _) = a.quotient_central(&line).map_err(|e| e.to_string())?;
        let r = classify(&q).map_err(|e| e.to_string())?;
        let target = build(&r.label, f).unwrap();
        if !verify_witness(&q, &target, &r.witness).unwrap().is_valid() {
            return Err(format!("witness for line ({x},{y}) does not verify"));
        }
        seen.insert(r.label.to_string());
    }
    Ok(seen)
}

fn central_lines(p: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1)];
    out.extend((0..p).map(|c| (1, c)));
    out
}

fn quotient_dichotomy() -> Outcome {
    let expected: BTreeSet<String> = ["H(3,1)+F(3)", "H(3,2)"].into_iter().map(String::from).collect();
    let mut details = Vec::new();
    let mut ok = true;
    let mut run = |name: &str, res: Result<BTreeSet<String>, String>| match res {
        Ok(seen) => {
            ok &= seen == expected;
            details.push(format!("{name}: {seen:?}"));
        }
        Err(e) => {
            ok = false;
            details.push(format!("{name}: {e}"));
        }
    };
    for p in [2u64, 3, 5] {
        run(&format!("GF({p})"), central_line_dichotomy(&PrimeField::new(p).unwrap(), &central_lines(p as i64)));
    }
    let q_lines: Vec<(i64, i64)> = [(0, 1), (1, 0), (1, 1), (1, -1), (2, 3), (1, -4)].into();
    run("Q", central_line_dichotomy(&Rationals, &q_lines));

    // [e4,e5,e6] = e8, [e1,e2,e3] = e8 + e7 with e'7 = e8 + e7.
    let f = Rationals;
    let mut case_two = table(&f, 3, 8, &[(vec![4, 5, 6], 8)]);
    let mut v = vec![f.zero(); 8];
    v[6] = f.one();
    v[7] = f.one();
    case_two.set_bracket(&[0, 1, 2], v.clone()).unwrap();
    let mut cols: Vec<_> = (0..8).map(|i| unit_vector(&f, 8, i)).collect();
    cols[6] = v;
    let witness = BasisChange::from_columns(&f, 8, &cols).unwrap();
    let to_381 = verify_witness(&case_two, &build(&Label::A381, &f).unwrap(), &witness).unwrap().is_valid();
    let to_387 = verify_witness(&case_two, &build(&Label::A387, &f).unwrap(), &witness).unwrap().is_valid();
    details.push(format!("stated witness onto A_381: {to_381}; onto A_387 (targets swapped): {to_387}"));
    Outcome { pass: ok && to_381, detail: details.join("; ") }
}

fn case_three<F: Field>(f: &F, n: usize, case: usize) -> NLieAlgebra<F> {
    let range = |lo: usize, hi: usize| (lo..=hi).collect::<Vec<_>>();
    let third = match case {
        1 => (range(2, n + 1), n + 5),
        2 => ((2..=n).chain([n + 2]).collect(), n + 5),
        _ => ([2].into_iter().chain(4..=n + 2).collect(), n + 5),
    };
    let second = if case == 3 { (range(2, n + 1), n + 4) } else { (range(3, n + 2), n + 4) };
    table(f, n, n + 5, &[(range(1, n), n + 3), second, third])
}

fn case_three_claims() -> Outcome {
    let f = Rationals;
    let mut ok = true;
    let mut details = Vec::new();
    for n in 3..=5 {
        for (case, k) in [(1, 6), (2, 6), (3, 5)] {
            let a = case_three(&f, n, case);
            let target = build(&Label::family(n, 5, k), &f).unwrap();
            let out = signed_perm_iso(&a, &target, 100_000);
            let verified = out.witness().is_some_and(|w| verify_witness(&a, &target, w).unwrap().is_valid());
            ok &= verified;
            let actual = classify(&a).map(|r| r.label.to_string()).unwrap_or_else(|e| e.to_string());
            details.push(format!("n={n} case {case}->A({n},{},{k}): {verified} (checked {}, classifies as {actual})", n + 5, out.checked()));
        }
    }
    Outcome { pass: ok, detail: details.join("; ") }
}

fn distinctness() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for p in [2u64, 3] {
        let fp = PrimeField::new(p).unwrap();
        for n in [3, 4] {
            let labels = list_for(n, n + 5).labels;
            let prints: Vec<_> = labels.iter().map(|l| fingerprint(&build(l, &fp).unwrap(), &FingerprintOptions::default())).collect();
            let mut coarse_collisions = Vec::new();
            for i in 0..labels.len() {
                for j in i + 1..labels.len() {
                    if prints[i] == prints[j] || prints[i].profiles.is_empty() {
                        ok = false;
                        details.push(format!("GF({p}) n={n}: {} = {}", labels[i], labels[j]));
                    }
                    if prints[i].coarse() == prints[j].coarse() {
                        coarse_collisions.push(format!("{}~{}", labels[i], labels[j]));
                    }
                }
            }
            let expected = vec![format!("A({n},{},5)~A({n},{},6)", n + 5, n + 5)];
            ok &= coarse_collisions == expected;
            details.push(format!("GF({p}) n={n}: {} distinct, coarse collisions {coarse_collisions:?}", labels.len()));
        }
    }
    Outcome { pass: ok, detail: details.join("; ") }
}

fn round_trip() -> Outcome {
    let f5 = PrimeField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total = 0;
    let mut bad: Vec<String> = Vec::new();
    fn one<F: Field>(a: &NLieAlgebra<F>, label: &Label, p: &BasisChange<F>, bad: &mut Vec<String>) {
        let b = a.apply_basis_change(p).unwrap();
        match classify(&b) {
            Ok(r) if &r.label == label && verify_witness(&b, a, &r.witness).unwrap().is_valid() => {}
            Ok(r) => bad.push(format!("{label} -> {}", r.label)),
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    for n in 3..=5 {
        for label in list_for(n, n + 5).labels {
            let a5 = build(&label, &f5).unwrap();
            for _ in 0..50 {
                one(&a5, &label, &random_change(&f5, n + 5, &mut rng), &mut bad);
            }
            let aq = build(&label, &Rationals).unwrap();
            for _ in 0..20 {
                one(&aq, &label, &unimodular(n + 5, &mut rng), &mut bad);
            }
            total += 70;
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("{} of {total} conjugates reclassified; failures {bad:?}", total - bad.len()) }
}

fn completeness_audit() -> Outcome {
    let f2 = PrimeField::new(2).unwrap();
    let r = audit(3, 8, &f2, 1000, 42).unwrap();
    let mut reasons: BTreeMap<String, usize> = BTreeMap::new();
    for fail in &r.failures {
        let s = fail.error.to_string();
        let key = s.split(" (").next().unwrap_or(&s).to_string();
        *reasons.entry(key).or_insert(0) += 1;
    }
    Outcome {
        pass: r.failures.is_empty() && r.unlisted.is_empty(),
        detail: format!(
            "seed 42: histogram {:?}; {} normalization failures {reasons:?}; unlisted labels {:?}",
            r.histogram,
            r.failures.len(),
            r.unlisted
        ),
    }
}

fn heisenberg_branch() -> Outcome {
    let f3 = PrimeField::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    for (n, m, k) in [(3, 1, 4), (3, 2, 1), (4, 2, 0), (4, 1, 4), (5, 1, 4)] {
        let label = Label::heisenberg(n, m, k);
        let a = build(&label, &f3).unwrap();
        for _ in 0..5 {
            let b = a.apply_basis_change(&random_change(&f3, a.dim(), &mut rng)).unwrap();
            let m_from_center = (b.dim() - b.center().dim()) / n;
            match classify(&b) {
                Ok(r) if r.label == Label::heisenberg(n, m_from_center, k) && r.label == label => {}
                Ok(r) => bad.push(format!("{label} -> {}", r.label)),
                Err(e) => bad.push(format!("{label}: {e}")),
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("25 conjugates over GF(3); failures {bad:?}") }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, bool); 8] = [
        ("catalog validity", catalog_validity, true),
        ("invariant dimensions", invariant_dims, true),
        ("central-line quotients", quotient_dichotomy, false),
        ("case 3 witnesses", case_three_claims, false),
        ("fingerprint distinctness", distinctness, true),
        ("classifier round trip", round_trip, true),
        ("completeness audit", completeness_audit, false),
        ("Heisenberg branch", heisenberg_branch, true),
    ];
    let mut red = Vec::new();
    for (i, (name, run, required)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        report(i + 1, name, start, &o);
        if *required && !o.pass {
            red.push(i + 1);
        }
    }
    if !red.is_empty() {
        eprintln!("required criteria failed: {red:?}");
        std::process::exit(1);
    }
}
