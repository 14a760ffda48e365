use super::rational::Rational;
use super::scalar::Scalar;

/// Dense univariate polynomial over a field, coefficients stored low to high.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<F: Scalar> {
    ctx: F::Ctx,
    coeffs: Vec<F>,
}

impl<F: Scalar> UPoly<F> {
    pub fn new(ctx: F::Ctx, coeffs: Vec<F>) -> Self {
        let mut p = UPoly { ctx, coeffs };
        p.trim();
        p
    }

    pub fn zero(ctx: F::Ctx) -> Self {
        UPoly { ctx, coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        UPoly::new(c.ctx(), vec![c])
    }

    pub fn one(ctx: F::Ctx) -> Self {
        let one = F::one_in(&ctx);
        UPoly::new(ctx, vec![one])
    }

    /// The polynomial `x`.
    pub fn x(ctx: F::Ctx) -> Self {
        UPoly::new(ctx.clone(), vec![F::zero_in(&ctx), F::one_in(&ctx)])
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![F::zero_in(&ctx); k];
        coeffs.push(c);
        UPoly::new(ctx, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg(0) = 0, for bookkeeping only.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| F::zero_in(&self.ctx))
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(|| F::zero_in(&self.ctx))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        UPoly::new(self.ctx.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        UPoly::new(self.ctx.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        UPoly::new(self.ctx.clone(), self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        UPoly::new(self.ctx.clone(), self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(self.ctx.clone());
        }
        UPoly::new(self.ctx.clone(), F::mul_slices(&self.coeffs, &other.coeffs))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = UPoly::one(self.ctx.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(self.ctx.clone()), self.clone());
        }
        let mut quot = vec![F::zero_in(&self.ctx); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(self.ctx.clone(), quot), UPoly::new(self.ctx.clone(), rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self`, otherwise `None`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_rational(&self.ctx, &Rational::from_integer(i.into()))))
            .collect();
        UPoly::new(self.ctx.clone(), coeffs)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero_in(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// self(g)
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UPoly::zero(self.ctx.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// self(x + c), the Taylor expansion at c.
    pub fn taylor_shift(&self, c: &F) -> Self {
        let g = UPoly::new(self.ctx.clone(), vec![c.clone(), F::one_in(&self.ctx)]);
        self.compose(&g)
    }

    /// Index of the lowest nonzero coefficient; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Yun's algorithm: returns `(g_i, i)` with self = lc * prod g_i^i, g_i monic squarefree
    /// and pairwise coprime. Trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn map<G: Scalar>(&self, ctx: G::Ctx, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(ctx, self.coeffs.iter().map(f).collect())
    }

    /// Human-readable form in the given variable, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut cs = c.render();
            let simple = !cs[1..].contains([' ', '+', '-']);
            let negative = simple && cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = if simple { cs } else { format!("({cs})") };
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl UPoly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::new((), coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }
}
