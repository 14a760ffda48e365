//! Multivariate gcd over Q by the recursive primitive PRS, and squarefree parts.

use num_traits::One;

use super::error::AlgebraError;
use super::poly::Poly;
use super::rational::Rational;
use super::resultant::{prem, trim, Coeffs};

fn content_in(p: &Poly, v: usize) -> Poly {
    let mut acc = p.zero_like();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_from(&acc, &c, v + 1);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn primitive_part_in(p: &Poly, v: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").primitive()
}

fn gcd_from(a: &Poly, b: &Poly, start: usize) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let Some(v) = (start..a.nvars()).find(|&i| a.depends_on(i) || b.depends_on(i)) else {
        return a.constant_like(Rational::one());
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let gc = gcd_from(&ca, &cb, v + 1);

    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    let g = loop {
        if r1.is_zero() {
            break r0;
        }
        if r1.degree_in(v) == 0 {
            break r1.constant_like(Rational::one());
        }
        let mut r: Coeffs = prem(&r0.coeffs_in(v), &r1.coeffs_in(v));
        trim(&mut r);
        let r = Poly::from_coeffs_in(&r1, v, &r);
        r0 = r1;
        r1 = primitive_part_in(&r, v);
    };
    gc.mul(&primitive_part_in(&g, v)).primitive()
}

/// gcd of two polynomials: integer coefficients, content 1, positive leading coefficient.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_from(a, b, 0)
}

/// f / gcd(f, df/dvar), made primitive.
pub fn squarefree_part(f: &Poly, var: &str) -> Result<Poly, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let i = f.var_index(var)?;
    let g = poly_gcd(f, &f.derivative(i));
    Ok(f.exact_div(&g)?.primitive())
}

/// Reduced polynomial with the same zero set: f / gcd(f, all partial derivatives).
pub fn squarefree_part_total(f: &Poly) -> Result<Poly, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        g = poly_gcd(&g, &f.derivative(i));
    }
    Ok(f.exact_div(&g)?.primitive())
}

/// Squarefree decomposition f = c * prod layer_i^i: layers primitive, pairwise coprime,
/// each reduced. Layers of equal multiplicity are multiplied together.
pub fn squarefree_layers(f: &Poly) -> Result<Vec<(Poly, u32)>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut layers: Vec<(Poly, u32)> = Vec::new();
    collect_layers(f, &mut layers);
    layers.sort_by_key(|(_, m)| *m);
    Ok(layers)
}

fn collect_layers(f: &Poly, out: &mut Vec<(Poly, u32)>) {
    let Some(v) = (0..f.nvars()).find(|&i| f.depends_on(i)) else {
        return;
    };
    let c = content_in(f, v);
    let pp = f.exact_div(&c).expect("content divides").primitive();
    // Yun over Q[other variables][x_v]
    let d0 = pp.derivative(v);
    let b = poly_gcd(&pp, &d0);
    let mut a = pp.exact_div(&b).expect("gcd divides");
    let mut d = d0.exact_div(&b).expect("gcd divides").sub(&a.derivative(v));
    let mut i = 1;
    while a.depends_on(v) {
        let g = poly_gcd(&a, &d);
        if g.depends_on(v) {
            push_layer(out, g.clone(), i);
        }
        let next = a.exact_div(&g).expect("gcd divides");
        d = d.exact_div(&g).expect("gcd divides").sub(&next.derivative(v));
        a = next;
        i += 1;
    }
    collect_layers(&c, out);
}

fn push_layer(out: &mut Vec<(Poly, u32)>, p: Poly, m: u32) {
    let p = p.primitive();
    match out.iter_mut().find(|(_, k)| *k == m) {
        Some(entry) => entry.0 = entry.0.mul(&p).primitive(),
        None => out.push((p, m)),
    }
}
