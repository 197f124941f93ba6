//! The twelve acceptance criteria, one pass/fail line each.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bpvoa_core::combo::Combo;
use bpvoa_core::fields::check_commutators;
use bpvoa_core::lattice::{from_b_basis, to_b_basis, BKey, ExpGround, HeisVector, LatticeKey, LatticeState, Pi};
use bpvoa_core::partition::Partition;
use bpvoa_core::presentations::{self, relations, GM, GP, J, L};
use bpvoa_core::qseries::QSeries;
use bpvoa_core::realisation::{spectral_flow_compat, verify_injectivity, Level, Realisation};
use bpvoa_core::repr::{
    self, bp_spectral_flow, classify, classify_critical, conjugation, generator_states, p_poly, ComplexRat,
    HwData, RelaxedSpec, Status, WattsParams,
};
use bpvoa_core::voa::PbwMonomial;
use bpvoa_core::HalfInt;
use bpvoa_exact::{rat, RatFunc, Rational, Var};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, secs: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(secs), format!("took {elapsed:.1?}, budget {secs}s"))
}

fn c1_homomorphism() -> Outcome {
    let start = Instant::now();
    let r = Realisation::symbolic();
    let report = r.verify_homomorphism();
    let elapsed = start.elapsed();
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).map(|c| format!("{:?} j={}", c.pair, c.j)).collect();
    ensure(failed.is_empty(), format!("mismatches: {failed:?}"))?;
    let pairs: std::collections::BTreeSet<_> = report.checks.iter().map(|c| c.pair.clone()).collect();
    ensure(pairs.len() == 16, "missing generator pairs")?;
    let max = report.checks.iter().map(|c| c.pole_order).max().unwrap_or(0);
    ensure(max == 4, format!("max pole order {max}"))?;
    within(elapsed, 60)?;
    Ok(format!("{} coefficient checks, max pole order {max}, {elapsed:.1?}", report.checks.len()))
}

fn c2_critical() -> Outcome {
    let start = Instant::now();
    let r = Realisation::critical();
    let report = r.verify_homomorphism();
    let elapsed = start.elapsed();
    ensure(report.all_pass(), "critical homomorphism mismatch")?;
    let central = report.checks.iter().filter(|c| c.pair.0 == "S" || c.pair.1 == "S");
    let mut n = 0;
    for c in central {
        ensure(c.computed == "0", format!("S not central: {:?} j={}", c.pair, c.j))?;
        n += 1;
    }
    ensure(n > 0, "no S products checked")?;
    within(elapsed, 30)?;
    Ok(format!("{} checks, {n} involving S all zero, {elapsed:.1?}", report.checks.len()))
}

fn c3_central_charge() -> Outcome {
    ensure(presentations::central_charge_identity(), "c_BP ≠ c_Z + c_Π")?;
    let at = |f: RatFunc| f.specialize(&[(Var::K, rat(-9, 4))]).unwrap();
    let lhs = at(presentations::c_bp());
    let rhs = at(presentations::c_zam() + presentations::c_pi());
    ensure(lhs == RatFunc::from_int(-10) && rhs == lhs, format!("k=-9/4: {lhs} vs {rhs}"))?;
    Ok("identity in ℚ(k); both sides -10 at k = -9/4".into())
}

fn c4_singular_vectors() -> Outcome {
    for n in 1..=6usize {
        let engine = presentations::singular_vector_coefficient(n).map_err(|e| e.to_string())?;
        let nn = n as i64;
        let oracle = rf(&format!("-{nn}*({nn}-k-2)*({nn}-2*k-4)"));
        ensure(engine == oracle, format!("n = {n}: {engine} vs {oracle}"))?;
    }
    // annihilation at the levels where the vector is singular, and not elsewhere
    let mut singular = 0;
    for num in -8..=8 {
        let k = rat(num, 2);
        if k == rat(-3, 1) {
            continue;
        }
        for n in 1..=5 {
            let got = presentations::is_singular_vector(n, &k).map_err(|e| e.to_string())?;
            ensure(
                got == presentations::is_singular_vector_predicted(n, &k),
                format!("n = {n}, k = {k}"),
            )?;
            singular += usize::from(got);
        }
    }
    ensure(singular > 0, "no singular vector found on the grid")?;
    Ok(format!("n = 1..6 symbolic; {singular} singular cases on the k ∈ ½ℤ grid"))
}

fn c5_commutators() -> Outcome {
    let checks = relations::check_relations(-2..=2, 2);
    let failed: Vec<_> = checks.iter().filter(|c| !c.holds).map(|c| format!("{} m={} n={}", c.name, c.m, c.n)).collect();
    ensure(failed.is_empty(), format!("{failed:?}"))?;
    Ok(format!("{} relation instances on all vectors of weight ≤ 2", checks.len()))
}

fn c6_factorisation() -> Outcome {
    let w = WattsParams::symbolic();
    let hw = w.hw().map_err(|e| e.to_string())?;
    let p = p_poly(&hw, &w.level());
    let [x1, x2, x3] = w.roots();
    // expand -(x - x₁)(x - x₂)(x - x₃) directly
    let x = RatFunc::var(Var::X);
    let expanded = -((x.clone() - x1.clone()) * (x.clone() - x2.clone()) * (x.clone() - x3.clone()));
    ensure(p.to_ratfunc() == expanded, "p ≠ -(x-x₁)(x-x₂)(x-x₃)")?;
    ensure(x2.clone() - x1.clone() == rf("r-t*s"), "x₂ - x₁")?;
    ensure(x1 - x3.clone() == rf("r'-t*s'"), "x₁ - x₃")?;
    ensure(x2 - x3 == rf("r+r'-t*(s+s')"), "x₂ - x₃")?;
    Ok("identity in ℚ(r,r',s,s',t)".into())
}

fn c7_top_space() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < 20 {
        let k = rat(rng.gen_range(-40..40), rng.gen_range(1..8));
        if k == rat(-3, 1) {
            continue;
        }
        let delta = rat(rng.gen_range(-20..20), rng.gen_range(1..6));
        let w = rat(rng.gen_range(-20..20), rng.gen_range(1..6));
        let lambda = rat(rng.gen_range(-20..20), rng.gen_range(1..9));
        let n: i64 = rng.gen_range(-4..5);
        let r = Realisation::new(&Level::at(k.clone())).map_err(|e| e.to_string())?;
        let hw = HwData::new(delta.clone().into(), w.clone().into());
        let x = &lambda + Rational::from_integer(n.into());
        let xr: RatFunc = x.clone().into();
        let c = repr::gminus0_components(&r, &hw, &xr).ok_or("engine output not proportional to the shifted vector")?;
        let q = |v: Rational| RatFunc::from(v);
        let expected = [
            q(w.clone()),
            q(&delta * &x),
            q(-&delta * rat(2, 1)),
            q(&x * &x * &x),
            q(-(&x * &x)),
            q(x.clone()),
        ];
        ensure(c.values == expected, format!("components at k={k} Δ={delta} w={w} x={x}: {:?}", c.values))?;
        // p(x) = w - (k+2)(k+3)Δ + ((k+3)Δ - 2(k+2)²) x + 3(k+2) x² - x³
        let two = rat(2, 1);
        let kp2 = &k + &two;
        let kp3 = &k + rat(3, 1);
        let p = &w - &kp2 * &kp3 * &delta + (&kp3 * &delta - &two * &kp2 * &kp2) * &x + rat(3, 1) * &kp2 * &x * &x
            - &x * &x * &x;
        ensure(c.total_value == q(p.clone()), format!("G-_0 at k={k}: {} vs {p}", c.total_value))?;
        let gp = repr::gplus0_engine(&r, &hw, &xr).ok_or("G+_0 output")?;
        ensure(gp.is_one(), "G+_0 coefficient ≠ 1")?;
        done += 1;
    }
    Ok("20 seeded random (k, Δ, w, λ, n); six components and p(λ+n) match".into())
}

/// Number of PBW monomials of weight `n`: tuples of partitions with parts
/// bounded below by the generator weights, counted by brute force.
fn pbw_count(weights: &[u32], n: u32) -> usize {
    fn go(weights: &[u32], n: u32) -> usize {
        match weights.split_first() {
            None => usize::from(n == 0),
            Some((&h, rest)) => (0..=n)
                .map(|m| {
                    let parts = Partition::all_of(m).into_iter().filter(|p| p.parts().iter().all(|&x| x >= h)).count();
                    parts * go(rest, n - m)
                })
                .sum(),
        }
    }
    go(weights, n)
}

fn c8_injectivity() -> Outcome {
    let start = Instant::now();
    let levels = [rat(-9, 4), rat(-5, 3), rat(1, 2)];
    let report = verify_injectivity(4, &levels).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for c in &report.checks {
        let brute = pbw_count(&[1, 1, 2, 2], c.weight as u32);
        ensure(c.monomials == brute, format!("weight {}: {} monomials, brute force {brute}", c.weight, c.monomials))?;
        ensure(c.rank == c.monomials, format!("k = {} weight {}: rank {} < {}", c.level, c.weight, c.rank, c.monomials))?;
    }
    within(elapsed, 300)?;
    let dims: Vec<usize> = (0..=4).map(|w| pbw_count(&[1, 1, 2, 2], w)).collect();
    Ok(format!("full rank at k ∈ {{-9/4, -5/3, 1/2}}, dims {dims:?}, {elapsed:.1?}"))
}

/// `S_m(c)` from `m S_m = Σ_{i=1}^m c_(-i) S_{m-i}`.
fn schur_oracle(m: u32) -> BTreeMap<Partition, Rational> {
    let mut table: Vec<BTreeMap<Partition, Rational>> = vec![BTreeMap::from([(Partition::empty(), Rational::one())])];
    for p in 1..=m {
        let mut s = BTreeMap::new();
        for i in 1..=p {
            for (part, c) in &table[(p - i) as usize] {
                *s.entry(part.with_part(i)).or_insert_with(Rational::zero) += c / Rational::from_integer(p.into());
            }
        }
        table.push(s);
    }
    table.pop().unwrap()
}

fn schur_state(m: u32, j: &Partition, exp: ExpGround) -> LatticeState {
    Combo::from_terms(
        schur_oracle(m)
            .into_iter()
            .map(|(p, c)| (LatticeKey::new(j.clone(), p, exp.clone()), RatFunc::from(c))),
    )
}

fn apply_modes(pi: &Pi, modes: &[(char, i64)], v: &LatticeState) -> Result<LatticeState, String> {
    let mut cur = v.clone();
    for &(g, n) in modes.iter().rev() {
        cur = match g {
            'j' => pi.h_mode(&pi.j(), n, &cur),
            _ => pi.exp_mode(1, n, &cur).map_err(|e| e.to_string())?,
        };
    }
    Ok(cur)
}

fn factorials(p: &Partition) -> i64 {
    p.grouped().iter().map(|&(_, m)| (1..=m as i64).product::<i64>()).product()
}

fn c9_lattice() -> Outcome {
    let pi = Pi::symbolic();
    let lam = RatFunc::var(Var::Lambda);
    let st = LatticeState::single;
    // e^c_(-m-1) e^{nc} = S_m(c) e^{(n+1)c}; e^c_(-m) e^{-j+λc} = S_m(c) e^{-j+(λ+1)c}
    for m in 0..=5u32 {
        for n in -2..=2 {
            let got = pi.exp_mode(1, -(m as i64) - 1, &st(LatticeKey::ground(ExpGround::lattice(n)))).map_err(|e| e.to_string())?;
            ensure(got == schur_state(m, &Partition::empty(), ExpGround::lattice(n + 1)), format!("vacuum m={m}"))?;
        }
        let top = st(LatticeKey::ground(ExpGround::relaxed(lam.clone())));
        let got = pi.exp_mode(1, -(m as i64), &top).map_err(|e| e.to_string())?;
        ensure(got == schur_state(m, &Partition::empty(), ExpGround::relaxed(lam.clone() + RatFunc::one())), format!("relaxed m={m}"))?;
        if m > 0 {
            ensure(pi.exp_mode(1, m as i64, &top).map_err(|e| e.to_string())?.is_zero(), "positive mode on top")?;
        }
    }
    // top-space lemma for all partitions of weight ≤ 5
    let parts = Partition::up_to(5);
    let ground = ExpGround::relaxed(lam.clone());
    let mut distinct_only = true;
    for mu in &parts {
        let e_modes: Vec<_> = mu.parts().iter().map(|&x| ('e', x as i64)).collect();
        for nu in &parts {
            let v = st(LatticeKey::new(mu.clone(), nu.clone(), ground.clone()));
            let got = apply_modes(&pi, &e_modes, &v)?;
            let sign = if mu.len() % 2 == 0 { 1 } else { -1 };
            let target = st(LatticeKey::new(Partition::empty(), nu.clone(), ground.shift(mu.len() as i64)));
            ensure(got == target.scale(&RatFunc::from_int(sign * factorials(mu))), format!("e^c_μ j_-μ c_-ν: μ={mu} ν={nu}"))?;
            distinct_only &= (got == target.scale(&RatFunc::from_int(sign))) == mu.grouped().iter().all(|&(_, m)| m == 1);
            for mu2 in &parts {
                let dominated = mu2.len() > mu.len() || (mu2.len() == mu.len() && mu2.weight() >= mu.weight());
                if mu2 != mu && dominated {
                    let modes2: Vec<_> = mu2.parts().iter().map(|&x| ('e', x as i64)).collect();
                    ensure(apply_modes(&pi, &modes2, &v)?.is_zero(), format!("vanishing μ'={mu2} μ={mu}"))?;
                }
            }
        }
        let v = st(LatticeKey::new(Partition::empty(), mu.clone(), ground.clone()));
        let j_modes: Vec<_> = mu.parts().iter().map(|&x| ('j', x as i64)).collect();
        let got = apply_modes(&pi, &j_modes, &v)?;
        let top = st(LatticeKey::ground(ground.clone()));
        ensure(got == top.scale(&RatFunc::from_int(mu.product() as i64 * factorials(mu))), format!("j_ν c_-ν: ν={mu}"))?;
        for nu2 in &parts {
            if nu2 != mu && nu2.weight() >= mu.weight() {
                let modes2: Vec<_> = nu2.parts().iter().map(|&x| ('j', x as i64)).collect();
                ensure(apply_modes(&pi, &modes2, &v)?.is_zero(), format!("vanishing ν'={nu2} ν={mu}"))?;
            }
        }
    }
    ensure(distinct_only, "multiplicity-free form should agree exactly for distinct parts")?;
    // basis conversion round trip at weight ≤ 4
    let exps: Vec<ExpGround> = (-1..=1).map(ExpGround::lattice).chain([ground]).collect();
    let mut n = 0;
    for d in 0..=4u32 {
        for dj in 0..=d {
            for mu in Partition::all_of(dj) {
                for nu in Partition::all_of(d - dj) {
                    for e in &exps {
                        let v = st(LatticeKey::new(mu.clone(), nu.clone(), e.clone()));
                        ensure(from_b_basis(&to_b_basis(&v)) == v, "B_Π round trip")?;
                        let bk = BKey { j: mu.clone(), nu: nu.clone(), exp: e.clone() };
                        ensure(to_b_basis(&bk.expand()) == Combo::single(bk), "B_Π expand")?;
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "exponential modes m ≤ 5, lemma for |μ|,|ν| ≤ 5 (with multiplicity factorials), {n} basis round trips"
    ))
}

fn c10_character() -> Outcome {
    let eta = QSeries::eta_inverse_squared(20);
    ensure(*eta.offset() == rat(-1, 12), "η⁻² offset")?;
    for n in 0..=20u32 {
        let pairs: usize = (0..=n).map(|m| Partition::all_of(m).len() * Partition::all_of(n - m).len()).sum();
        ensure(*eta.coeff(n as usize) == RatFunc::from_int(pairs as i64), format!("q^{n}"))?;
    }
    let lam = RatFunc::var(Var::Lambda);
    let k = RatFunc::var(Var::K);
    let spec = RelaxedSpec::new(k, HwData::symbolic(), lam).map_err(|e| e.to_string())?;
    let ch = repr::character_relaxed(&spec, &QSeries::one(5), 5);
    ensure(ch.z_exp == rf("λ-(2*k+3)/3") && ch.delta, "relaxed z exponent")?;
    let lat = Pi::symbolic().character(RatFunc::var(Var::Lambda), 5);
    ensure(lat.y_exp == RatFunc::from_int(-1) && lat.z_exp == RatFunc::var(Var::Lambda), "Π_{-1}(λ) prefactor")?;
    Ok("η⁻² to q^20 matches pair counts; z^{λ-(2k+3)/3} prefactor".into())
}

fn c11_symmetries() -> Outcome {
    let voa = presentations::bp();
    let k = RatFunc::var(Var::K);
    let gens = generator_states(&voa);
    let vectors: Vec<PbwMonomial> = (0..=2).flat_map(|w| voa.pbw_basis(HalfInt::from_int(w))).collect();
    let mut checked = 0;
    for ell in -2..=2 {
        let (n, f) = check_commutators(&bp_spectral_flow(&voa, &k, ell), &gens, &vectors, -1..=1);
        ensure(f.is_empty(), format!("BP spectral flow ℓ = {ell}"))?;
        checked += n;
    }
    let (n, f) = check_commutators(&conjugation(&voa, &k), &gens, &vectors, -1..=1);
    ensure(f.is_empty(), "conjugation")?;
    checked += n;

    let pi = Pi::symbolic();
    let lam = RatFunc::var(Var::Lambda);
    let lat_gens: Vec<LatticeState> = vec![
        pi.heis_state(&HeisVector::a()),
        pi.heis_state(&HeisVector::b()),
        LatticeState::single(LatticeKey::ground(ExpGround::lattice(1))),
        LatticeState::single(LatticeKey::ground(ExpGround::lattice(-1))),
    ];
    let lat_vectors = vec![
        LatticeKey::vacuum(),
        LatticeKey::ground(ExpGround::lattice(1)),
        LatticeKey::ground(ExpGround::lattice(-1)),
        LatticeKey::new(Partition::new(vec![1]), Partition::empty(), ExpGround::zero()),
        LatticeKey::new(Partition::empty(), Partition::new(vec![1]), ExpGround::zero()),
        LatticeKey::ground(ExpGround::relaxed(lam)),
    ];
    for ell in -2..=2 {
        let (n, f) = check_commutators(&pi.spectral_flow(ell), &lat_gens, &lat_vectors, -2..=2);
        ensure(f.is_empty(), format!("Π spectral flow ℓ = {ell}"))?;
        checked += n;
    }
    let r = Realisation::symbolic();
    for ell in -2..=2 {
        let compat = spectral_flow_compat(&r, ell).map_err(|e| e.to_string())?;
        ensure(compat.iter().all(|c| c.pass), format!("φ∘σ_BP ≠ (id⊗σ_Π)∘φ at ℓ = {ell}"))?;
    }
    // order four on generators
    let conj = |g| repr::conjugation_field(&voa, &k, g);
    for g in [J, GP, L, GM] {
        let mut f = conj(g);
        for _ in 0..3 {
            f = repr::compose_fields(&f, conj, &voa);
        }
        ensure(f == bpvoa_core::fields::ShiftedField::of(voa.gen_state(g)), "conjugation⁴ ≠ id")?;
    }
    Ok(format!(
        "{checked} twisted commutators for ℓ ∈ -2..2 and conjugation (z-shifted form); compatibility for ℓ ∈ -2..2"
    ))
}

fn c12_classifier() -> Outcome {
    let k = rat(-9, 4);
    let zero = Rational::zero();
    let spec = |lambda| RelaxedSpec::rational(k.clone(), zero.clone(), zero.clone(), lambda).unwrap();
    // oracle roots: brute-force search of p(x) = -x³ - 3/4 x² - 1/8 x over x = a/b
    let p = p_poly(&HwData::new(RatFunc::zero(), RatFunc::zero()), &k.clone().into());
    let mut brute: Vec<Rational> = Vec::new();
    for b in 1..=8 {
        for a in -16..=16 {
            let x = rat(a, b);
            if p.eval(&x.clone().into()).is_zero() && !brute.contains(&x) {
                brute.push(x);
            }
        }
    }
    brute.sort();
    ensure(brute == vec![rat(-1, 2), rat(-1, 4), rat(0, 1)], format!("oracle roots {brute:?}"))?;
    let irr = classify(&spec(rat(1, 3)), None).map_err(|e| e.to_string())?;
    let roots: Vec<String> = brute.iter().map(|r| r.to_string()).collect();
    ensure(irr.roots == roots, format!("reported roots {:?}", irr.roots))?;
    ensure(irr.status == Status::Irreducible, "λ = 1/3 should be irreducible")?;
    let red = classify(&spec(rat(0, 1)), None).map_err(|e| e.to_string())?;
    ensure(red.status == Status::Reducible && red.maximal_mu.as_deref() == Some("0"), "λ = 0 should be reducible with μ = 0")?;

    let g = repr::g_poly(&RatFunc::zero(), &RatFunc::zero());
    let x = RatFunc::var(Var::X);
    let factored = -(x.clone() * (x.clone() + RatFunc::one()) * (x + RatFunc::from_int(2)));
    ensure(g.to_ratfunc() == factored, "g ≠ -x(x+1)(x+2)")?;
    let c = classify_critical(&zero, &zero, &ComplexRat::real(rat(1, 3))).map_err(|e| e.to_string())?;
    ensure(c.status == Status::Irreducible, "critical λ = 1/3")?;
    let c = classify_critical(&zero, &zero, &ComplexRat::real(zero.clone())).map_err(|e| e.to_string())?;
    ensure(c.status == Status::Undetermined && c.roots_in_coset.len() == 3, "critical λ = 0")?;
    Ok("roots {0, -1/4, -1/2}; λ=1/3 irreducible; λ=0 reducible, μ=0; critical analogue".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("homomorphism, symbolic k", c1_homomorphism),
        ("homomorphism, critical level", c2_critical),
        ("central charge identity", c3_central_charge),
        ("singular vectors (G+_{-1})^n |0>", c4_singular_vectors),
        ("mode commutator suite", c5_commutators),
        ("factorisation of the cubic", c6_factorisation),
        ("top-space G-_0 cross-check", c7_top_space),
        ("injectivity to weight 4", c8_injectivity),
        ("half-lattice lemmas and basis change", c9_lattice),
        ("characters", c10_character),
        ("spectral flow and conjugation", c11_symmetries),
        ("classifier", c12_classifier),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                println!("[FAIL] {:>2}. {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
