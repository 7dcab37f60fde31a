//! Parameter tuples `(a, b, c, d; q)`, dual parameters, the `(k1, u1, u0, k0)`
//! presentation and the parameter maps induced by the algebra automorphisms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Cx, Field};

/// A parameter tuple with its base `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    pub q: S,
}

/// One named genericity or consistency check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

/// Result list of [`ParamSet::check_generic`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn all_pass(&self) -> bool {
        self.0.iter().all(|d| d.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Diagnostic> {
        self.0.iter().filter(|d| !d.pass)
    }

    fn push(&mut self, check: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Diagnostic {
            check: check.into(),
            pass,
            detail: detail.into(),
        });
    }
}

/// Names of parameter-space maps (one per automorphism or symmetry).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamMapName {
    T0,
    T0hat,
    T1,
    T2,
    T3,
    T4,
    Sigma,
    Tau,
    TauInv,
    Eta,
    Beta2,
    SwapAb,
    SwapCd,
}

impl ParamMapName {
    pub const ALL: [ParamMapName; 13] = [
        ParamMapName::T0,
        ParamMapName::T0hat,
        ParamMapName::T1,
        ParamMapName::T2,
        ParamMapName::T3,
        ParamMapName::T4,
        ParamMapName::Sigma,
        ParamMapName::Tau,
        ParamMapName::TauInv,
        ParamMapName::Eta,
        ParamMapName::Beta2,
        ParamMapName::SwapAb,
        ParamMapName::SwapCd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamMapName::T0 => "t0",
            ParamMapName::T0hat => "t0hat",
            ParamMapName::T1 => "t1",
            ParamMapName::T2 => "t2",
            ParamMapName::T3 => "t3",
            ParamMapName::T4 => "t4",
            ParamMapName::Sigma => "sigma",
            ParamMapName::Tau => "tau",
            ParamMapName::TauInv => "tau_inv",
            ParamMapName::Eta => "eta",
            ParamMapName::Beta2 => "beta2",
            ParamMapName::SwapAb => "swap_ab",
            ParamMapName::SwapCd => "swap_cd",
        }
    }

    pub fn parse(s: &str) -> Result<ParamMapName> {
        ParamMapName::ALL
            .iter()
            .copied()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for ParamMapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl<S: Field> fmt::Display for ParamSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{};{})", self.a, self.b, self.c, self.d, self.q)
    }
}

/// Returns `true` when `q^k = 1` for some `1 <= k <= kmax`.
fn root_of_unity<S: Field>(q: &S, kmax: u32, tol: f64) -> bool {
    let one = q.one_like();
    let mut p = q.clone();
    for _ in 0..kmax {
        if p.close_to(&one, tol) {
            return true;
        }
        p = p * q;
    }
    false
}

impl<S: Field> ParamSet<S> {
    /// Builds a tuple after checking that all entries are nonzero and `q` is not a
    /// low-order root of unity.
    pub fn new(a: S, b: S, c: S, d: S, q: S) -> Result<Self> {
        for (n, v) in [("a", &a), ("b", &b), ("c", &c), ("d", &d), ("q", &q)] {
            if v.is_zero() {
                return Err(Error::InvalidParams(format!("{n} = 0")));
            }
        }
        if root_of_unity(&q, 24, 1e-30) {
            return Err(Error::InvalidParams(format!("q = {q} is a root of unity")));
        }
        Ok(ParamSet { a, b, c, d, q })
    }

    /// Constructor without validation (used for intermediate tuples).
    pub fn raw(a: S, b: S, c: S, d: S, q: S) -> Self {
        ParamSet { a, b, c, d, q }
    }

    pub fn abcd(&self) -> S {
        self.a.clone() * &self.b * &self.c * &self.d
    }

    /// `q^{-1} abcd`.
    pub fn dual_radicand(&self) -> Result<S> {
        Ok(self.abcd() * &self.q.inv()?)
    }

    /// `ã = sqrt(q^{-1} abcd)` with the principal branch.
    pub fn dual_a(&self) -> Result<S> {
        self.dual_radicand()?.sqrt()
    }

    /// Dual tuple `(ã, ab/ã, ac/ã, ad/ã; q)`.
    pub fn dual(&self) -> Result<ParamSet<S>> {
        let at = self.dual_a()?;
        let ati = at.inv()?;
        Ok(ParamSet {
            b: self.a.clone() * &self.b * &ati,
            c: self.a.clone() * &self.c * &ati,
            d: self.a.clone() * &self.d * &ati,
            a: at,
            q: self.q.clone(),
        })
    }

    /// The twelve product identities satisfied by the dual tuple, as
    /// `(name, lhs, rhs)` triples.  The first three compare squares.
    pub fn dual_identities(&self) -> Result<Vec<(&'static str, S, S)>> {
        let t = self.dual()?;
        let (a, b, c, d, q) = (&self.a, &self.b, &self.c, &self.d, &self.q);
        let sq = |x: &S| x.clone() * x;
        Ok(vec![
            ("bt^2 = qab/(cd)", sq(&t.b), q.clone() * a * b / (c.clone() * d)),
            ("ct^2 = qac/(bd)", sq(&t.c), q.clone() * a * c / (b.clone() * d)),
            ("dt^2 = qad/(bc)", sq(&t.d), q.clone() * a * d / (b.clone() * c)),
            ("bt ct = qa/d", t.b.clone() * &t.c, q.clone() * a / d),
            ("bt dt = qa/c", t.b.clone() * &t.d, q.clone() * a / c),
            ("ct dt = qa/b", t.c.clone() * &t.d, q.clone() * a / b),
            ("at/bt = cd/q", t.a.clone() / &t.b, c.clone() * d / q),
            ("at/ct = bd/q", t.a.clone() / &t.c, b.clone() * d / q),
            ("at/dt = bc/q", t.a.clone() / &t.d, b.clone() * c / q),
            ("bt/ct = b/c", t.b.clone() / &t.c, b.clone() / c),
            ("bt/dt = b/d", t.b.clone() / &t.d, b.clone() / d),
            ("ct/dt = c/d", t.c.clone() / &t.d, c.clone() / d),
        ])
    }

    /// Applies a named parameter map.
    pub fn map(&self, name: ParamMapName) -> Result<ParamSet<S>> {
        let (a, b, c, d, q) = (&self.a, &self.b, &self.c, &self.d, &self.q);
        let p = |a: S, b: S, c: S, d: S| ParamSet::raw(a, b, c, d, q.clone());
        Ok(match name {
            ParamMapName::T0 => p(q.clone() / d, b.clone(), c.clone(), q.clone() / a),
            ParamMapName::T0hat => p(a.clone(), c.clone(), b.clone(), d.clone()),
            ParamMapName::T1 => p(b.inv()?, a.inv()?, c.clone(), d.clone()),
            ParamMapName::T2 | ParamMapName::SwapAb => p(b.clone(), a.clone(), c.clone(), d.clone()),
            ParamMapName::T3 | ParamMapName::SwapCd => p(a.clone(), b.clone(), d.clone(), c.clone()),
            ParamMapName::T4 => p(a.clone(), b.clone(), q.clone() / d, q.clone() / c),
            ParamMapName::Sigma => self.dual()?,
            ParamMapName::Tau | ParamMapName::TauInv => {
                p(a.clone(), b.clone(), c.clone(), q.clone() / d)
            }
            ParamMapName::Eta => ParamSet::raw(a.inv()?, b.inv()?, c.inv()?, d.inv()?, q.inv()?),
            ParamMapName::Beta2 => {
                let at = self.dual_a()?;
                let m = -(q.sqrt()? * &at);
                p(m.clone() / c, m.clone() / d, m.clone() / a, m / b)
            }
        })
    }

    /// Orbit of the tuple under the group generated by the named maps, by
    /// breadth-first search. Stops with an error past `limit` elements.
    pub fn orbit(&self, gens: &[ParamMapName], limit: usize) -> Result<Vec<ParamSet<S>>> {
        let mut seen = vec![self.clone()];
        let mut next = 0;
        while next < seen.len() {
            let cur = seen[next].clone();
            next += 1;
            for g in gens {
                let img = cur.map(*g)?;
                if !seen.contains(&img) {
                    if seen.len() == limit {
                        return Err(Error::Internal(format!("orbit exceeds {limit} elements")));
                    }
                    seen.push(img);
                }
            }
        }
        Ok(seen)
    }

    /// Genericity diagnostics: nonvanishing of every denominator that the
    /// polynomial, function and operator formulas divide by, for shifts up to
    /// `kmax`, plus the real-part conditions under which principal square roots
    /// behave multiplicatively.
    pub fn check_generic(&self, kmax: i64, tol: f64) -> Diagnostics {
        let mut out = Diagnostics::default();
        let (a, b, c, d, q) = (&self.a, &self.b, &self.c, &self.d, &self.q);
        let one = a.one_like();
        let nonzero = [("a", a), ("b", b), ("c", c), ("d", d), ("q", q)];
        for (n, v) in nonzero {
            out.push(format!("nonzero {n}"), !v.negligible(1.0, tol), v.to_string());
        }
        out.push(
            "q not a root of unity",
            !root_of_unity(q, kmax.max(1) as u32, tol),
            q.to_string(),
        );
        let abcd = self.abcd();
        let mut prods: Vec<(String, S)> = vec![
            ("ab".into(), a.clone() * b),
            ("ac".into(), a.clone() * c),
            ("ad".into(), a.clone() * d),
            ("bc".into(), b.clone() * c),
            ("bd".into(), b.clone() * d),
            ("cd".into(), c.clone() * d),
        ];
        if let (Ok(ai), Ok(bi), Ok(ci), Ok(di)) = (a.inv(), b.inv(), c.inv(), d.inv()) {
            prods.push(("a/b".into(), a.clone() * &bi));
            prods.push(("b/a".into(), b.clone() * &ai));
            prods.push(("c/d".into(), c.clone() * &di));
            prods.push(("d/c".into(), d.clone() * &ci));
            prods.push(("a/d".into(), a.clone() * &di));
            prods.push(("a^2".into(), a.clone() * a));
        }
        // 1 - x q^k for |k| <= kmax
        let qpows: Vec<(i64, S)> = (-kmax..=kmax)
            .filter_map(|k| q.powi(k).ok().map(|p| (k, p)))
            .collect();
        let mut check_family = |name: &str, x: &S| {
            let bad = qpows
                .iter()
                .find(|(_, qk)| (one.clone() - x.clone() * qk).negligible(1.0, tol));
            out.push(
                format!("1 - {name} q^k != 0"),
                bad.is_none(),
                match bad {
                    Some((k, _)) => format!("vanishes at k = {k}"),
                    None => format!("|k| <= {kmax}"),
                },
            );
        };
        check_family("abcd", &abcd);
        for (n, v) in &prods {
            check_family(n, v);
        }
        if !S::EXACT {
            let re_pos = |x: &S| x.to_c64().0 > 0.0;
            let items: Vec<(&str, S)> = vec![
                ("Re(ab) > 0", a.clone() * b),
                ("Re(a/b) > 0", a.clone() / b),
                ("Re(cd) > 0", c.clone() * d),
                ("Re(c/d) > 0", c.clone() / d),
            ];
            for (n, v) in items {
                out.push(n, re_pos(&v), v.to_string());
            }
        }
        out
    }

    /// Converts every entry with `f`.
    pub fn convert<T>(&self, f: impl Fn(&S) -> T) -> ParamSet<T> {
        ParamSet {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
            q: f(&self.q),
        }
    }

    pub fn with_q(&self, q: S) -> ParamSet<S> {
        ParamSet { q, ..self.clone() }
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// The `(k1, u1, u0, k0)` presentation of the algebra parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeParams {
    pub k1: Cx,
    pub u1: Cx,
    pub u0: Cx,
    pub k0: Cx,
    pub q: Cx,
}

/// `k1 = i sqrt(ab)`, `u1 = -i sqrt(a/b)`, `u0 = i sqrt(c/d)`, `k0 = -i sqrt(cd/q)`.
pub fn to_hecke(p: &ParamSet<Cx>) -> Result<HeckeParams> {
    let i = Cx::i(p.a.prec());
    let (a, b, c, d, q) = (&p.a, &p.b, &p.c, &p.d, &p.q);
    Ok(HeckeParams {
        k1: i.clone() * (a * b).sqrt()?,
        u1: -(i.clone() * (a / b).sqrt()?),
        u0: i.clone() * (c / d).sqrt()?,
        k0: -(i * (c * d / q.clone()).sqrt()?),
        q: q.clone(),
    })
}

/// Inverse of [`to_hecke`]: `a = u1 k1`, `b = -k1/u1`, `c = q^{1/2} u0 k0`,
/// `d = -q^{1/2} k0/u0`.
pub fn from_hecke(h: &HeckeParams) -> Result<ParamSet<Cx>> {
    let qh = h.q.sqrt()?;
    let a = h.u1.clone() * &h.k1;
    let b = -(h.k1.clone() / &h.u1);
    let c = qh.clone() * &h.u0 * &h.k0;
    let d = -(qh * &h.k0 / &h.u0);
    ParamSet::new(a, b, c, d, h.q.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{bits_for_digits, rat, Rational};

    fn p_exact() -> ParamSet<Rational> {
        // q^{-1}abcd = 9/4
        ParamSet::new(rat(1, 2), rat(3, 1), rat(1, 4), rat(3, 2), rat(1, 4)).unwrap()
    }

    #[test]
    fn dual_is_involution_exact() {
        let p = p_exact();
        let d = p.dual().unwrap();
        assert_eq!(d.a, rat(3, 2));
        assert_eq!(d.dual().unwrap(), p);
    }

    #[test]
    fn dual_identities_exact() {
        for (name, l, r) in p_exact().dual_identities().unwrap() {
            assert_eq!(l, r, "{name}");
        }
    }

    #[test]
    fn dual_numeric_example() {
        let prec = bits_for_digits(50);
        let f = |x: f64| Cx::real(prec, x);
        let p = ParamSet::new(f(2.0), f(3.0), f(4.0), f(5.0), f(0.5)).unwrap();
        let t = p.dual().unwrap();
        let at = Cx::real(prec, 240.0).sqrt().unwrap();
        assert!(t.a.rel_dist(&at) < 1e-48);
        assert!((t.a.to_c64().0 - 15.491933384829668).abs() < 1e-12);
        assert!(t.b.rel_dist(&(f(6.0) / &at)) < 1e-48);
        assert!(t.c.rel_dist(&(f(8.0) / &at)) < 1e-48);
        assert!(t.d.rel_dist(&(f(10.0) / &at)) < 1e-48);
        for (name, l, r) in p.dual_identities().unwrap() {
            assert!(l.rel_dist(&r) < 1e-45, "{name}");
        }
    }

    #[test]
    fn dual_not_square_exact() {
        let p = ParamSet::new(rat(2, 1), rat(3, 1), rat(4, 1), rat(5, 1), rat(1, 2)).unwrap();
        assert!(matches!(p.dual(), Err(Error::NotASquare(_))));
    }

    #[test]
    fn hecke_roundtrip() {
        let prec = bits_for_digits(40);
        let p = ParamSet::new(
            Cx::new(prec, 0.7, 0.1),
            Cx::new(prec, 1.3, -0.2),
            Cx::new(prec, 0.9, 0.05),
            Cx::new(prec, 0.4, 0.1),
            Cx::new(prec, 0.3, 0.0),
        )
        .unwrap();
        let h = to_hecke(&p).unwrap();
        let back = from_hecke(&h).unwrap();
        for (x, y) in p.entries().iter().zip(back.entries()) {
            assert!(x.rel_dist(y) < 1e-40);
        }
        // the dual tuple exchanges u1 and k0
        let hd = to_hecke(&p.dual().unwrap()).unwrap();
        assert!(hd.k1.rel_dist(&h.k1) < 1e-40);
        assert!(hd.u1.rel_dist(&h.k0) < 1e-40);
        assert!(hd.k0.rel_dist(&h.u1) < 1e-40);
        assert!(hd.u0.rel_dist(&h.u0) < 1e-40);
    }

    #[test]
    fn generic_diagnostics_catch_resonance() {
        // ab = q^{-1}
        let p = ParamSet::new(rat(2, 1), rat(2, 1), rat(3, 1), rat(5, 1), rat(1, 4)).unwrap();
        let diag = p.check_generic(8, 0.0);
        assert!(!diag.all_pass());
        assert!(diag.failures().any(|d| d.check.contains("ab")));
        assert!(p_exact().check_generic(4, 0.0).failures().all(|d| !d.check.contains("abcd")));
    }

    #[test]
    fn param_maps() {
        let p = p_exact();
        let q = &p.q;
        assert_eq!(p.map(ParamMapName::T4).unwrap().c, q / &p.d);
        assert_eq!(p.map(ParamMapName::T0).unwrap().a, q / &p.d);
        let e = p.map(ParamMapName::Eta).unwrap();
        assert_eq!(e.q, rat(4, 1));
        assert_eq!(e.map(ParamMapName::Eta).unwrap(), p);
        assert!(ParamMapName::parse("tau_inv").is_ok());
        assert!(ParamMapName::parse("nope").is_err());
    }

    #[test]
    fn orbit_matches_permutations_with_even_reflections() {
        use std::collections::BTreeSet;
        let p = ParamSet::raw(rat(2, 3), rat(5, 7), rat(3, 11), rat(7, 5), rat(1, 13));
        let gens = [ParamMapName::T0hat, ParamMapName::T2, ParamMapName::T3, ParamMapName::T4];
        let orbit = p.orbit(&gens, 1000).unwrap();
        assert_eq!(orbit.len(), 192);
        // every permutation of (a,b,c,d) with an even number of entries x -> q/x
        let xs = [p.a.clone(), p.b.clone(), p.c.clone(), p.d.clone()];
        let mut oracle = BTreeSet::new();
        for perm in 0..24usize {
            let mut idx = vec![0, 1, 2, 3];
            let mut k = perm;
            let mut order = Vec::new();
            for r in (1..=4).rev() {
                order.push(idx.remove(k % r));
                k /= r;
            }
            for mask in 0..16u32 {
                if mask.count_ones() % 2 == 1 {
                    continue;
                }
                let t: Vec<Rational> = order
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| if mask >> j & 1 == 1 { &p.q / &xs[i] } else { xs[i].clone() })
                    .collect();
                oracle.insert(t);
            }
        }
        let got: BTreeSet<Vec<Rational>> =
            orbit.iter().map(|o| vec![o.a.clone(), o.b.clone(), o.c.clone(), o.d.clone()]).collect();
        assert_eq!(got, oracle);
    }
}
