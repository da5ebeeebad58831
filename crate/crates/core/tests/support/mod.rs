//! Seeded generators of factored rational functions and the arithmetic
//! property checks shared by the acceptance run and the property tests.

#![allow(dead_code)]

use dynwg::ratfun::{frac, LinearForm, RatFun, RatFunError, Scalar};
use rand::Rng;

pub const NX: usize = 2;

/// A rational function together with the forms its numerator splits into.
#[derive(Debug, Clone)]
pub struct Factored {
    pub value: RatFun,
    pub num_forms: Vec<LinearForm>,
}

fn small_form<R: Rng>(rng: &mut R) -> LinearForm {
    loop {
        let x: Vec<i64> = (0..NX).map(|_| rng.gen_range(-2..=2)).collect();
        let f = LinearForm::from_ints(&x, rng.gen_range(-3..=3));
        if !f.is_zero() {
            return f;
        }
    }
}

fn pool_form<R: Rng>(rng: &mut R) -> LinearForm {
    const POOL: [([i64; NX], i64); 8] =
        [([1, 0], 0), ([0, 1], 0), ([0, 0], 1), ([1, 0], 1), ([1, 1], -1), ([1, -1], 2), ([2, 1], 0), ([0, 1], -3)];
    if rng.gen_bool(0.6) {
        let (x, h) = POOL[rng.gen_range(0..POOL.len())];
        LinearForm::from_ints(&x, h)
    } else {
        small_form(rng)
    }
}

fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let n = rng.gen_range(-9..=9);
        if n != 0 {
            return frac(n, rng.gen_range(1..=5));
        }
    }
}

/// `c * prod(num) / prod(den)` with at most two factors on each side.
pub fn random_factored<R: Rng>(rng: &mut R) -> Factored {
    let num_forms: Vec<LinearForm> = (0..rng.gen_range(0..=2)).map(|_| pool_form(rng)).collect();
    let den_forms: Vec<LinearForm> = (0..rng.gen_range(0..=2)).map(|_| pool_form(rng)).collect();
    let value = RatFun::ratio_of_products(NX, &num_forms, &den_forms).unwrap().scale(&nonzero_scalar(rng));
    Factored { value, num_forms }
}

/// A linear substitution `x_i -> form_i` in the same variables.
pub fn random_images<R: Rng>(rng: &mut R) -> Vec<LinearForm> {
    (0..NX).map(|_| small_form(rng)).collect()
}

#[derive(Debug, Default, Clone)]
pub struct PropertyTally {
    pub triples: usize,
    pub failures: Vec<String>,
    pub equal_pairs: usize,
    pub unequal_pairs: usize,
    pub substitutions: usize,
    pub collapsed: usize,
}

/// Field axioms on one triple.
pub fn check_field_axioms(a: &Factored, b: &Factored, c: &Factored, t: &mut PropertyTally) {
    let (x, y, z) = (&a.value, &b.value, &c.value);
    let zero = RatFun::zero(NX);
    let one = RatFun::one(NX);
    let mut check = |name: &str, ok: bool| {
        if !ok {
            t.failures.push(format!("{name}: a={x} b={y} c={z}"));
        }
    };
    check("add commutes", x.add(y) == y.add(x));
    check("mul commutes", x.mul(y) == y.mul(x));
    check("add associates", x.add(y).add(z) == x.add(&y.add(z)));
    check("mul associates", x.mul(y).mul(z) == x.mul(&y.mul(z)));
    check("distributes", x.mul(&y.add(z)) == x.mul(y).add(&x.mul(z)));
    check("additive identity", x.add(&zero) == *x);
    check("multiplicative identity", x.mul(&one) == *x);
    check("additive inverse", x.sub(x).is_zero() && x.add(&x.neg()).is_zero());
    match x.recip_over(&a.num_forms) {
        Ok(r) => check("multiplicative inverse", x.mul(&r).is_one()),
        Err(e) => check(&format!("reciprocal ({e})"), false),
    }
    t.triples += 1;
}

/// Structural equality agrees with three-point evaluation equality, on a
/// pair that is equal by construction and on an unrelated pair.
pub fn check_equality_agreement<R: Rng>(a: &Factored, b: &Factored, rng: &mut R, t: &mut PropertyTally) {
    let x = &a.value;
    // Same value reached through an expanded numerator and an extra common factor.
    let g = pool_form(rng);
    let same = RatFun::from_parts(
        x.numerator().mul_linear(&g),
        x.denominator().map(|(f, m)| (f.as_linear(), m)).chain(std::iter::once((&g, 1))),
    )
    .unwrap();
    let same = same.add(&b.value).sub(&b.value);
    let structural = same == *x;
    let evaluated = same.eq_by_evaluation(x, rng, 3);
    if !(structural && evaluated) {
        t.failures.push(format!("equal pair disagrees: {x} vs {same} (structural {structural}, evaluated {evaluated})"));
    }
    t.equal_pairs += 1;
    let structural = x == &b.value;
    let evaluated = x.eq_by_evaluation(&b.value, rng, 3);
    if structural != evaluated {
        t.failures.push(format!("pair disagrees: {x} vs {} (structural {structural}, evaluated {evaluated})", b.value));
    }
    t.unequal_pairs += 1;
}

/// Substitution respects sums and products.
pub fn check_substitution<R: Rng>(a: &Factored, b: &Factored, rng: &mut R, t: &mut PropertyTally) {
    let images = random_images(rng);
    let phi = |f: &RatFun| f.substitute(&images, NX);
    let (pa, pb) = match (phi(&a.value), phi(&b.value)) {
        (Ok(pa), Ok(pb)) => (pa, pb),
        (Err(RatFunError::PoleCollapse(_)), _) | (_, Err(RatFunError::PoleCollapse(_))) => {
            t.collapsed += 1;
            return;
        }
        (Err(e), _) | (_, Err(e)) => {
            t.failures.push(format!("substitution error {e}"));
            return;
        }
    };
    let sum = phi(&a.value.add(&b.value));
    let prod = phi(&a.value.mul(&b.value));
    if sum.as_ref() != Ok(&pa.add(&pb)) || prod.as_ref() != Ok(&pa.mul(&pb)) {
        t.failures.push(format!("substitution is not a homomorphism on {} and {}", a.value, b.value));
    }
    t.substitutions += 1;
}

/// Runs all property checks on `n` seeded triples.
pub fn run_properties(seed: u64, n: usize) -> PropertyTally {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut t = PropertyTally::default();
    for _ in 0..n {
        let a = random_factored(&mut rng);
        let b = random_factored(&mut rng);
        let c = random_factored(&mut rng);
        check_field_axioms(&a, &b, &c, &mut t);
        check_equality_agreement(&a, &b, &mut rng, &mut t);
        check_substitution(&a, &b, &mut rng, &mut t);
    }
    t
}
