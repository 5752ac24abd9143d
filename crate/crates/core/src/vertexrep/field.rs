//! Fields on the truncated module as series-valued operators.
//!
//! `eval(f, v, out)` returns every term of `f(z) v` whose output degree is at
//! most `out`. All degrees and exponents are scaled by `m0`. A homogeneous
//! field of scaled weight `h` sends a vector of degree `d` to degree
//! `d + h + e` in the coefficient of `z^{e / m0}`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::cycfield::{rat, CycScalar, Rat};
use crate::glvirmod::{GlVirGen, GlVirWithWeight, Mat};
use crate::verma::{ModVec, Verma};

use super::space::{fock_degree, fock_diff, fock_mul, series_add, series_add_key, Key, Osc, Series, TruncVector};
use super::waff::{TwistedAffine, WGen};
use super::RepError;

#[derive(Debug, Clone)]
pub enum Field {
    Ident,
    /// `K_a(z)`, 0-based.
    K(usize),
    /// `D_a(z)`, 0-based.
    D(usize),
    /// `K_0(r, z)`.
    K0(Vec<i64>),
    /// `Y_W(b_k, z)`.
    X(usize),
    /// `u(z) = sum_k u(k) z^{-k-1}` for a matrix `u` in the loop part.
    Gl(Mat),
    /// `sum_k L(k) z^{-k-2}`.
    Lgl,
    Sum(Vec<(CycScalar, Field)>),
    /// Multiplication by `z^{e / m0}`.
    ZPow(i64, Box<Field>),
    Deriv(Box<Field>),
    /// Product of fields that commute with each other (left acts last).
    Prod(Box<Field>, Box<Field>),
    /// Twisted normally ordered product split at the left field's residue.
    NormOrd(Box<Field>, Box<Field>),
    /// Evaluated key by key through a cache slot.
    Cached(usize, Box<Field>),
}

impl Field {
    pub fn prod(a: Field, b: Field) -> Field {
        Field::Prod(Box::new(a), Box::new(b))
    }

    pub fn normord(a: Field, b: Field) -> Field {
        Field::NormOrd(Box::new(a), Box::new(b))
    }

    pub fn scaled(c: CycScalar, f: Field) -> Field {
        Field::Sum(vec![(c, f)])
    }

    pub fn zpow(e: i64, f: Field) -> Field {
        Field::ZPow(e, Box::new(f))
    }

    pub fn deriv(f: Field) -> Field {
        Field::Deriv(Box::new(f))
    }
}

/// The three tensor factors besides `q^r`.
pub struct Factors {
    pub m0: i64,
    pub n: usize,
    pub w: Verma<TwistedAffine>,
    pub gl: Verma<GlVirWithWeight>,
    pub cache: RefCell<HashMap<(usize, Key, i64), Series>>,
}

fn gl_energy(m: &[GlVirGen]) -> i64 {
    m.iter()
        .map(|g| match g {
            GlVirGen::L(k) | GlVirGen::E(_, _, k) | GlVirGen::H(_, k) => -k,
            _ => 0,
        })
        .sum()
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

impl Factors {
    pub fn key_degree(&self, k: &Key) -> i64 {
        self.m0 * (fock_degree(&k.fock) + gl_energy(&k.gl)) + self.w.mono_depth(&k.w)
    }

    pub fn max_degree(&self, v: &TruncVector) -> i64 {
        v.terms.keys().map(|k| self.key_degree(k)).max().unwrap_or(0)
    }

    pub fn weight(&self, f: &Field) -> i64 {
        match f {
            Field::Ident | Field::K0(_) => 0,
            Field::K(_) | Field::D(_) | Field::X(_) | Field::Gl(_) => self.m0,
            Field::Lgl => 2 * self.m0,
            Field::Sum(items) => items.iter().map(|(_, g)| self.weight(g)).max().unwrap_or(0),
            Field::ZPow(e, g) => self.weight(g) - e,
            Field::Deriv(g) => self.weight(g) + self.m0,
            Field::Prod(a, b) | Field::NormOrd(a, b) => self.weight(a) + self.weight(b),
            Field::Cached(_, g) => self.weight(g),
        }
    }

    fn residue(&self, f: &Field) -> i64 {
        match f {
            Field::X(k) => self.w.alg.residue[*k],
            Field::Sum(items) => items.first().map(|(_, g)| self.residue(g)).unwrap_or(0),
            _ => 0,
        }
    }

    pub fn eval(&self, f: &Field, v: &TruncVector, out: i64) -> Result<Series, RepError> {
        let mut s = Series::new();
        if v.is_zero() {
            return Ok(s);
        }
        match f {
            Field::Ident => {
                for (k, c) in &v.terms {
                    if self.key_degree(k) <= out {
                        series_add_key(&mut s, 0, k.clone(), c.clone());
                    }
                }
            }
            Field::K(a) => self.each_key(v, &mut s, |k, c, s| self.heis_key(*a, false, k, c, out, s)),
            Field::D(a) => self.each_key(v, &mut s, |k, c, s| self.heis_key(*a, true, k, c, out, s)),
            Field::K0(r) => self.each_key(v, &mut s, |k, c, s| self.k0_key(r, k, c, out, s)),
            Field::X(x) => {
                for (k, c) in &v.terms {
                    self.x_key(*x, k, c, out, &mut s)?;
                }
            }
            Field::Gl(u) => {
                for (k, c) in &v.terms {
                    self.gl_key(Some(u), k, c, out, &mut s)?;
                }
            }
            Field::Lgl => {
                for (k, c) in &v.terms {
                    self.gl_key(None, k, c, out, &mut s)?;
                }
            }
            Field::Sum(items) => {
                for (c, g) in items {
                    if c.is_zero() {
                        continue;
                    }
                    for (e, w) in self.eval(g, v, out)? {
                        series_add(&mut s, e, &w, c);
                    }
                }
            }
            Field::ZPow(sh, g) => {
                for (e, w) in self.eval(g, v, out)? {
                    s.insert(e + sh, w);
                }
            }
            Field::Deriv(g) => {
                for (e, w) in self.eval(g, v, out)? {
                    series_add(&mut s, e - self.m0, &w, &CycScalar::from_rat(rat(e, self.m0)));
                }
            }
            Field::Cached(id, g) => {
                for (k, c) in &v.terms {
                    let slot = (*id, k.clone(), out);
                    let hit = self.cache.borrow().get(&slot).cloned();
                    let part = match hit {
                        Some(p) => p,
                        None => {
                            let p = self.eval(g, &TruncVector::basis(k.clone()), out)?;
                            self.cache.borrow_mut().insert(slot, p.clone());
                            p
                        }
                    };
                    for (e, w) in part {
                        series_add(&mut s, e, &w, c);
                    }
                }
            }
            Field::Prod(a, b) => {
                let cap = out + self.max_degree(v);
                for (e1, w) in self.eval(b, v, cap)? {
                    for (e2, x) in self.eval(a, &w, out)? {
                        series_add(&mut s, e1 + e2, &x, &CycScalar::one());
                    }
                }
            }
            Field::NormOrd(a, b) => {
                // Annihilation part: coefficients of z^e with e <= -alpha - 1.
                let split = -self.residue(a) - self.m0;
                for (e1, w) in self.eval(b, v, out)? {
                    for (e2, x) in self.eval(a, &w, out)? {
                        if e2 > split {
                            series_add(&mut s, e1 + e2, &x, &CycScalar::one());
                        }
                    }
                }
                let cap = self.max_degree(v) + self.weight(a);
                for (e1, w) in self.eval(a, v, cap)? {
                    if e1 > split {
                        continue;
                    }
                    for (e2, x) in self.eval(b, &w, out)? {
                        series_add(&mut s, e1 + e2, &x, &CycScalar::one());
                    }
                }
            }
        }
        Ok(s)
    }

    fn each_key<F: Fn(&Key, &CycScalar, &mut Series)>(&self, v: &TruncVector, s: &mut Series, f: F) {
        for (k, c) in &v.terms {
            f(k, c, s);
        }
    }

    /// `K_a(z)` or `D_a(z)` on one basis key.
    fn heis_key(&self, a: usize, is_d: bool, k: &Key, c: &CycScalar, out: i64, s: &mut Series) {
        let m0 = self.m0;
        let d = self.key_degree(k);
        // Creation modes z^{j-1}.
        let mut j = 1i64;
        while d + j * m0 <= out {
            let o = if is_d { Osc::V(a, j as u32) } else { Osc::U(a, j as u32) };
            let key = Key { fock: fock_mul(&k.fock, o), ..k.clone() };
            series_add_key(s, (j - 1) * m0, key, c * &CycScalar::from_int(j));
            j += 1;
        }
        if is_d && k.r[a] != 0 && d <= out {
            series_add_key(s, -m0, k.clone(), c * &CycScalar::from_int(k.r[a]));
        }
        // Annihilation modes z^{-j-1}.
        let mut seen = Vec::new();
        for &o in &k.fock {
            let hit = match (o, is_d) {
                (Osc::V(p, _), false) | (Osc::U(p, _), true) => p == a,
                _ => false,
            };
            if !hit || seen.contains(&o) {
                continue;
            }
            seen.push(o);
            let j = o.level() as i64;
            if d - j * m0 > out {
                continue;
            }
            let (mult, rest) = fock_diff(&k.fock, o).expect("present");
            let key = Key { fock: rest, ..k.clone() };
            series_add_key(s, (-j - 1) * m0, key, c * &CycScalar::from_int(mult));
        }
    }

    /// `K_0(r, z) = q^r exp(sum r_p u_pj z^j) exp(-sum r_p z^{-j}/j d/dv_pj)`.
    fn k0_key(&self, r: &[i64], k: &Key, c: &CycScalar, out: i64, s: &mut Series) {
        let m0 = self.m0;
        let d = self.key_degree(k);
        let shifted: Vec<i64> = k.r.iter().zip(r).map(|(a, b)| a + b).collect();
        if r.iter().all(|&x| x == 0) {
            if d <= out {
                series_add_key(s, 0, k.clone(), c.clone());
            }
            return;
        }
        // Distinct v-oscillators that the annihilation exponential can hit.
        let mut vars: Vec<(Osc, u32)> = Vec::new();
        for &o in &k.fock {
            if let Osc::V(p, _) = o {
                if r[p] != 0 {
                    match vars.last_mut() {
                        Some((x, e)) if *x == o => *e += 1,
                        _ => vars.push((o, 1)),
                    }
                }
            }
        }
        let mut lowered = Vec::new();
        lower_choices(&vars, 0, r, k.fock.clone(), Rat::from_integer(1.into()), 0, &mut lowered);
        let colors: Vec<usize> = (0..r.len()).filter(|&p| r[p] != 0).collect();
        for (fock, coef, a) in lowered {
            let base = d - a * m0;
            let mut b = 0i64;
            while base + b * m0 <= out {
                let mut raised = Vec::new();
                raise_choices(&colors, r, b, 1, 0, fock.clone(), &mut Vec::new(), Rat::from_integer(1.into()), &mut raised);
                for (f2, c2) in raised {
                    let key = Key { r: shifted.clone(), fock: f2, w: k.w.clone(), gl: k.gl.clone() };
                    series_add_key(s, (b - a) * m0, key, c * &CycScalar::from_rat(&coef * &c2));
                }
                b += 1;
            }
        }
    }

    fn x_key(&self, x: usize, k: &Key, c: &CycScalar, out: i64, s: &mut Series) -> Result<(), RepError> {
        let d = self.key_degree(k);
        let wd = self.w.mono_depth(&k.w);
        let m0 = self.m0;
        let res = self.w.alg.residue[x];
        let lo = d - out;
        let mut n = lo + (res - lo).rem_euclid(m0);
        let wv = ModVec::mono(k.w.clone(), CycScalar::one());
        while n <= wd {
            let img = self.w.act(&WGen::X(x, n), &wv)?;
            for (m, a) in img.terms {
                let key = Key { w: m, ..k.clone() };
                series_add_key(s, -n - m0, key, c * &a);
            }
            n += m0;
        }
        Ok(())
    }

    fn gl_key(&self, u: Option<&Mat>, k: &Key, c: &CycScalar, out: i64, s: &mut Series) -> Result<(), RepError> {
        let d = self.key_degree(k);
        let ge = gl_energy(&k.gl);
        let m0 = self.m0;
        let glv = ModVec::mono(k.gl.clone(), CycScalar::one());
        for mode in div_ceil(d - out, m0)..=ge {
            let (gens, shift) = match u {
                Some(u) => (self.gl.alg.alg.decompose(u, mode), -mode - 1),
                None => (vec![(GlVirGen::L(mode), CycScalar::one())], -mode - 2),
            };
            let img = self.gl.act_sum(&gens, &glv)?;
            for (m, a) in img.terms {
                let key = Key { gl: m, ..k.clone() };
                series_add_key(s, shift * m0, key, c * &a);
            }
        }
        Ok(())
    }
}

/// Terms of the annihilation exponential: (monomial, coefficient, total lowering).
fn lower_choices(vars: &[(Osc, u32)], i: usize, r: &[i64], fock: Vec<Osc>, coef: Rat, a: i64, out: &mut Vec<(Vec<Osc>, Rat, i64)>) {
    if i == vars.len() {
        out.push((fock, coef, a));
        return;
    }
    let (o, e) = vars[i];
    let Osc::V(p, j) = o else { unreachable!() };
    let step = rat(-r[p], j as i64);
    let mut f = fock;
    let mut cf = coef;
    for kk in 0..=e {
        lower_choices(vars, i + 1, r, f.clone(), cf.clone(), a + kk as i64 * j as i64, out);
        if kk < e {
            // d/dv applied once more: multiplicity factor and the exponential's 1/k!.
            let (mult, rest) = fock_diff(&f, o).expect("present");
            cf = cf * &step * Rat::from_integer(mult.into()) / Rat::from_integer((kk as i64 + 1).into());
            f = rest;
        }
    }
}

/// Terms of the creation exponential at total level `b`, parts chosen in
/// nondecreasing `(j, color)` order.
#[allow(clippy::too_many_arguments)]
fn raise_choices(colors: &[usize], r: &[i64], b: i64, min_j: i64, min_c: usize, fock: Vec<Osc>, created: &mut Vec<Osc>, coef: Rat, out: &mut Vec<(Vec<Osc>, Rat)>) {
    if b == 0 {
        out.push((fock, coef));
        return;
    }
    for j in min_j..=b {
        let start = if j == min_j { min_c } else { 0 };
        for ci in start..colors.len() {
            let p = colors[ci];
            let o = Osc::U(p, j as u32);
            created.push(o);
            // Dividing by the running multiplicity builds the 1/m! of the exponential.
            let m = created.iter().filter(|x| **x == o).count() as i64;
            let c2 = &coef * Rat::from_integer(r[p].into()) / Rat::from_integer(m.into());
            raise_choices(colors, r, b - j, j, ci, fock_mul(&fock, o), created, c2, out);
            created.pop();
        }
    }
}
