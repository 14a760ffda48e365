//! Univariate factorization over Q: Yun squarefree split, Cantor-Zassenhaus modulo a
//! small prime, linear Hensel lifting and subset recombination.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rational::Rational;
use super::upoly::UPoly;

/// f = unit * prod factor^multiplicity, factors primitive in Z[x] with positive leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(UPoly<Rational>, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UPoly<Rational> {
        let mut acc = UPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

// ---------- arithmetic in F_p[x], p < 2^31 ----------

type FpPoly = Vec<u64>;

fn fp_trim(a: &mut FpPoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out: FpPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_divrem(a: &FpPoly, d: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let dd = d.len() - 1;
    let inv = fp_inv(*d.last().unwrap(), p);
    let mut r = a.clone();
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] * inv % p;
        if c != 0 {
            for (j, &x) in d.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * x % p) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(dd);
    fp_trim(&mut r);
    fp_trim(&mut q);
    (q, r)
}

fn fp_monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = fp_inv(l, p);
            a.iter().map(|&x| x * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// (g, s, t) with s a + t b = g monic.
fn fp_ext_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let inv = fp_inv(*r0.last().unwrap(), p);
    let sc = |v: &FpPoly| -> FpPoly { v.iter().map(|&x| x * inv % p).collect() };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn fp_powmod(base: &FpPoly, exp: &BigUint, m: &FpPoly, p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let base = fp_divrem(base, m, p).1;
    for i in (0..exp.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), m, p).1;
        if exp.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &base, p), m, p).1;
        }
    }
    acc
}

fn fp_derivative(a: &FpPoly, p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
    fp_trim(&mut out);
    out
}

fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut i = 1;
    while rest.len() > 2 * i {
        h = fp_powmod(&h, &pe, &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
            out.push((g, i));
        }
        i += 1;
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((rest, d));
    }
    out
}

fn equal_degree(g: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp_trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &exp, g, p), &vec![1], p);
        let c = fp_gcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            let other = fp_divrem(g, &c, p).0;
            equal_degree(&c, d, p, rng, out);
            equal_degree(&fp_monic(&other, p), d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a squarefree monic polynomial over F_p (p odd).
fn factor_mod_p(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out
}

// ---------- integer polynomials ----------

type ZPoly = Vec<BigInt>;

fn z_trim(a: &mut ZPoly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(&mut out);
    out
}

fn z_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out: ZPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    z_trim(&mut out);
    out
}

fn z_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    z_trim(&mut out);
    out
}

fn z_symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    z_trim(&mut out);
    out
}

fn z_to_fp(a: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut out: FpPoly = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    fp_trim(&mut out);
    out
}

fn fp_to_z(a: &FpPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn z_content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn z_primitive(a: &ZPoly) -> ZPoly {
    let c = z_content(a);
    if c.is_zero() {
        return a.clone();
    }
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

/// Exact division in Z[x]; `None` if `d` does not divide `a`.
fn z_exact_div(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let dd = d.len() - 1;
    let ld = d.last().unwrap();
    let mut r = a.clone();
    if r.len() <= dd {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let top = &r[k + dd];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(ld);
        if !rem.is_zero() {
            return None;
        }
        for (j, x) in d.iter().enumerate() {
            r[k + j] -= &c * x;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    z_trim(&mut q);
    Some(q)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Lift f = g*h (mod p), g monic, to f = G*H (mod p^k) with G monic and lc(H) = lc(f).
fn hensel_pair(f: &ZPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, _, t) = fp_ext_gcd(g, h, p);
    let pb = BigInt::from(p);
    let mut big_g = fp_to_z(g);
    let mut big_h = fp_to_z(h);
    // lc(H) = lc(f) exactly
    *big_h.last_mut().unwrap() = f.last().unwrap().clone();
    let mut m = pb.clone();
    for _ in 1..k {
        let diff = z_sub(f, &z_mul(&big_g, &big_h));
        let e: ZPoly = diff.iter().map(|c| c / &m).collect();
        let e = z_to_fp(&e, p);
        let tau = fp_divrem(&fp_mul(&t, &e, p), g, p).1;
        let sigma = fp_divrem(&fp_sub(&e, &fp_mul(&tau, h, p), p), g, p).0;
        let tau_z: ZPoly = fp_to_z(&tau).into_iter().map(|c| c * &m).collect();
        let sigma_z: ZPoly = fp_to_z(&sigma).into_iter().map(|c| c * &m).collect();
        big_g = z_sub(&big_g, &tau_z.iter().map(|c| -c).collect::<ZPoly>());
        big_h = z_sub(&big_h, &sigma_z.iter().map(|c| -c).collect::<ZPoly>());
        m *= &pb;
    }
    (z_mod(&big_g, &m), big_h.iter().map(|c| c.mod_floor(&m)).collect())
}

fn hensel_all(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc_inv = f.last().unwrap().modinv(&modulus).expect("lc invertible");
        return vec![z_mod(&f.iter().map(|c| c * &lc_inv).collect(), &modulus)];
    }
    let g = &factors[0];
    let lc_p = z_to_fp(&vec![f.last().unwrap().clone()], p);
    let mut h = lc_p;
    for q in &factors[1..] {
        h = fp_mul(&h, q, p);
    }
    let (big_g, big_h) = hensel_pair(f, g, &h, p, k);
    let mut out = vec![big_g];
    out.extend(hensel_all(&big_h, &factors[1..], p, k));
    out
}

fn coefficient_bound(f: &ZPoly) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = f.last().unwrap().abs();
    lc * norm * (BigInt::one() << n)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a primitive squarefree integer polynomial with lc > 0.
fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    if f[0].is_zero() {
        let mut rest = factor_squarefree_z(&f[1..].to_vec());
        rest.push(vec![BigInt::zero(), BigInt::one()]);
        return rest;
    }
    // pick the prime with the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let lc_mod = f.last().unwrap().mod_floor(&BigInt::from(p));
        if lc_mod.is_zero() {
            continue;
        }
        let fp = z_to_fp(f, p);
        if fp_gcd(&fp, &fp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp_monic(&fp, p), p);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 4 {
            break;
        }
    }
    let (p, facs) = best.expect("a good prime exists");
    let bound = coefficient_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lifted = hensel_all(f, &facs, p, k);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for combo in combinations(remaining.len(), s) {
            let mut cand: ZPoly = vec![cur.last().unwrap().clone()];
            for &i in &combo {
                cand = z_mod(&z_mul(&cand, &remaining[i]), &m);
            }
            let cand = z_primitive(&z_symmetric(&cand, &m));
            if let Some(q) = z_exact_div(&cur, &cand) {
                found = Some((combo, cand, q));
                break;
            }
        }
        match found {
            Some((combo, cand, q)) => {
                out.push(cand);
                cur = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => s += 1,
        }
    }
    if cur.len() > 1 {
        out.push(z_primitive(&cur));
    }
    out
}

fn to_primitive_z(f: &UPoly<Rational>) -> ZPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: ZPoly = f.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    z_primitive(&z)
}

fn from_z(z: &ZPoly) -> UPoly<Rational> {
    UPoly::new((), z.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn cmp_factor(a: &UPoly<Rational>, b: &UPoly<Rational>) -> Ordering {
    a.deg0().cmp(&b.deg0()).then_with(|| {
        for i in (0..=a.deg0()).rev() {
            let o = a.coeff(i).cmp(&b.coeff(i));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Factorization into irreducibles over Q, ordered by degree then coefficients (high to low).
pub fn factor_rational(f: &UPoly<Rational>) -> Factorization {
    assert!(!f.is_zero(), "factor_rational of zero");
    let mut factors = Vec::new();
    for (layer, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree_z(&to_primitive_z(&layer)) {
            factors.push((from_z(&g), mult));
        }
    }
    factors.sort_by(|a, b| cmp_factor(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut prod = UPoly::one(());
    for (g, m) in &factors {
        prod = prod.mul(&g.pow(*m));
    }
    let unit = f.lc() / prod.lc();
    Factorization { unit, factors }
}

/// Distinct rational roots, sorted ascending.
pub fn rational_roots(f: &UPoly<Rational>) -> Vec<Rational> {
    if f.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<Rational> = factor_rational(f)
        .factors
        .iter()
        .filter(|(g, _)| g.deg0() == 1)
        .map(|(g, _)| -g.coeff(0) / g.coeff(1))
        .collect();
    out.sort();
    out
}
