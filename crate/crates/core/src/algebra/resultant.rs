//! Subresultant-PRS resultants and discriminants over Q[other variables].

use num_traits::One;

use super::error::AlgebraError;
use super::poly::Poly;
use super::rational::Rational;

/// Univariate view: coefficient `k` multiplies `var^k`.
pub(crate) type Coeffs = Vec<Poly>;

pub(crate) fn trim(c: &mut Coeffs) {
    while c.last().is_some_and(Poly::is_zero) {
        c.pop();
    }
}

pub(crate) fn deg(c: &Coeffs) -> usize {
    c.len().saturating_sub(1)
}

/// lc(b)^(deg a - deg b + 1) * a mod b.
pub(crate) fn prem(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let db = deg(b);
    let lb = b.last().expect("prem by zero").clone();
    let mut r = a.clone();
    trim(&mut r);
    if r.len() <= db {
        return r;
    }
    let mut steps = deg(&r) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let shift = deg(&r) - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (j, bc) in b.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&lr.mul(bc));
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 && !r.is_empty() {
        let f = lb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn div_all(c: &mut Coeffs, d: &Poly) -> Result<(), AlgebraError> {
    for x in c.iter_mut() {
        *x = x.exact_div(d)?;
    }
    Ok(())
}

/// Res(A, B) of two univariate coefficient vectors, both nonzero.
pub(crate) fn resultant_coeffs(a: &Coeffs, b: &Coeffs, zero: &Poly) -> Result<Poly, AlgebraError> {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return Ok(zero.clone());
    }
    let (da, db) = (deg(&a), deg(&b));
    if db == 0 {
        return Ok(b[0].pow(da as u32));
    }
    if da == 0 {
        return Ok(a[0].pow(db as u32));
    }
    let mut sign = Rational::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let one = zero.constant_like(Rational::one());
    let mut g = one.clone();
    let mut h = one;
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        let mut r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return Ok(zero.clone());
        }
        div_all(&mut r, &g.mul(&h.pow(delta as u32)))?;
        b = r;
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32).exact_div(&h.pow(delta as u32 - 1))?,
        };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a) as u32;
    let lb = b.last().unwrap();
    let out = lb.pow(da).exact_div(&h.pow(da - 1))?;
    Ok(out.scale(&sign))
}

/// Res_var(f, g) = lc(f)^deg(g) * prod g(alpha_i), computed by the subresultant PRS.
pub fn resultant(f: &Poly, g: &Poly, var: &str) -> Result<Poly, AlgebraError> {
    let i = f.var_index(var)?;
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !f.depends_on(i) && !g.depends_on(i) {
        return Err(AlgebraError::NoEliminationVariable);
    }
    resultant_coeffs(&f.coeffs_in(i), &g.coeffs_in(i), &f.zero_like())
}

/// disc_var(f) = (-1)^(d(d-1)/2) Res(f, df/dvar) / lc(f).
pub fn discriminant(f: &Poly, var: &str) -> Result<Poly, AlgebraError> {
    let i = f.var_index(var)?;
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let d = f.degree_in(i);
    if d == 0 {
        return Err(AlgebraError::NoEliminationVariable);
    }
    let coeffs = f.coeffs_in(i);
    let lc = coeffs.last().unwrap().clone();
    let r = resultant_coeffs(&coeffs, &f.derivative(i).coeffs_in(i), &f.zero_like())?;
    let r = r.exact_div(&lc)?;
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(r.scale(&sign))
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_poly;
    use super::*;

    fn p(s: &str) -> Poly {
        parse_poly(s, &["x", "a", "b", "c", "t"]).unwrap()
    }

    #[test]
    fn linear_resultant_follows_pinned_convention() {
        // lc(f)^deg g * g(a) = a - b
        assert_eq!(resultant(&p("x - a"), &p("x - b"), "x").unwrap(), p("a - b"));
    }

    #[test]
    fn resultant_with_constant_is_one() {
        assert_eq!(resultant(&p("x^3 + a"), &p("1"), "x").unwrap(), p("1"));
    }

    #[test]
    fn sylvester_example() {
        assert_eq!(resultant(&p("x^2 - 1"), &p("x - 2"), "x").unwrap(), p("3"));
    }

    #[test]
    fn no_elimination_variable() {
        assert_eq!(resultant(&p("a"), &p("b"), "x"), Err(AlgebraError::NoEliminationVariable));
    }

    #[test]
    fn quadratic_discriminants() {
        assert_eq!(discriminant(&p("x^2 + b*x + c"), "x").unwrap(), p("b^2 - 4*c"));
        assert_eq!(discriminant(&p("x^2 - t"), "x").unwrap(), p("4*t"));
        assert_eq!(discriminant(&p("x - a"), "x").unwrap(), p("1"));
        assert_eq!(discriminant(&p("0"), "x"), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn cubic_discriminant_matches_closed_form() {
        // disc(x^3 + b x + c) = -4 b^3 - 27 c^2
        assert_eq!(discriminant(&p("x^3 + b*x + c"), "x").unwrap(), p("-4*b^3 - 27*c^2"));
        // leading coefficient other than 1: disc(a x^2 + b x + c) = b^2 - 4ac
        assert_eq!(discriminant(&p("a*x^2 + b*x + c"), "x").unwrap(), p("b^2 - 4*a*c"));
    }
}
