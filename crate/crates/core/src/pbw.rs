//! PBW arithmetic in enveloping algebras of subalgebras of `gl_N`.
//!
//! An [`AlgebraContext`] fixes an ordered list of matrix units, a coefficient
//! ring and optionally a reduction character ψ. Elements are sparse sums of
//! ordered monomials; products are straightened by repeatedly commuting an
//! out-of-order generator past the last factor of a monomial, with results of
//! `monomial · generator` memoized in a [`Straightener`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::pyramid::LieDatum;
use crate::scalar::Ring;

/// Index of a generator within its context.
pub type Gen = u16;

/// Which subalgebra a context is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContextKind {
    /// All of `gl_N`, 𝔭-generators first and 𝔪-generators last.
    Gl,
    /// The parabolic 𝔭, in the same order as the 𝔭-prefix of `Gl`.
    Parabolic,
    /// A caller-supplied order on a bracket-closed set of matrix units.
    Custom,
}

/// Ordered generators, coefficients and reduction data.
#[derive(Debug)]
pub struct AlgebraContext {
    lie: LieDatum,
    ring: Ring,
    kind: ContextKind,
    gens: Vec<(usize, usize)>,
    index: Vec<Option<Gen>>,
    psi_p: Option<Vec<i128>>,
    brackets: Vec<Vec<(Gen, i128)>>,
    id: u64,
}

fn fnv(h: &mut u64, x: u64) {
    for b in x.to_le_bytes() {
        *h ^= b as u64;
        *h = h.wrapping_mul(0x100_0000_01b3);
    }
}

impl AlgebraContext {
    /// Context on an explicit ordered list of matrix units.
    ///
    /// `psi` gives ψ(g) for each generator (in order); when present and the
    /// ring is 𝔽_p, every `g^p` is rewritten as `g^{[p]} + ψ(g)^p`.
    pub fn with_order(
        lie: &LieDatum,
        ring: Ring,
        gens: Vec<(usize, usize)>,
        psi: Option<Vec<i128>>,
    ) -> Result<Arc<Self>> {
        Self::build(lie, ring, ContextKind::Custom, gens, psi)
    }

    fn build(
        lie: &LieDatum,
        ring: Ring,
        kind: ContextKind,
        gens: Vec<(usize, usize)>,
        psi: Option<Vec<i128>>,
    ) -> Result<Arc<Self>> {
        let n = lie.n();
        if gens.len() > Gen::MAX as usize {
            return Err(Error::GuardExceeded(format!("{} generators", gens.len())));
        }
        let mut index = vec![None; n * n];
        for (k, &(i, j)) in gens.iter().enumerate() {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::IndexOutOfRange(format!("e[{i},{j}] with N = {n}")));
            }
            if index[(i - 1) * n + j - 1].replace(k as Gen).is_some() {
                return Err(Error::IndexOutOfRange(format!("e[{i},{j}] listed twice")));
            }
        }
        let psi_p = match psi {
            None => None,
            Some(v) => {
                if ring.is_integral() {
                    return Err(Error::UnsupportedCharacteristic(0));
                }
                if v.len() != gens.len() {
                    return Err(Error::IndexOutOfRange("reduction character length".into()));
                }
                let p = ring.characteristic() as u32;
                Some(v.into_iter().map(|x| ring.pow(ring.reduce(x), p)).collect())
            }
        };
        let lookup = |i: usize, j: usize| index[(i - 1) * n + j - 1];
        let g = gens.len();
        let mut brackets = Vec::with_capacity(g * g);
        for &(i, j) in &gens {
            for &(k, l) in &gens {
                let mut out: Vec<(Gen, i128)> = Vec::new();
                if j == k {
                    out.push((lookup(i, l).ok_or(Error::NotInContext(i, l))?, 1));
                }
                if l == i {
                    let h = lookup(k, j).ok_or(Error::NotInContext(k, j))?;
                    match out.iter_mut().find(|t| t.0 == h) {
                        Some(t) => t.1 -= 1,
                        None => out.push((h, -1)),
                    }
                }
                out.retain(|t| t.1 != 0);
                out.sort();
                brackets.push(out);
            }
        }
        let mut id = 0xcbf2_9ce4_8422_2325u64;
        fnv(&mut id, ring.characteristic());
        fnv(&mut id, n as u64);
        for &(i, j) in &gens {
            fnv(&mut id, (i * 4096 + j) as u64);
        }
        if let Some(v) = &psi_p {
            fnv(&mut id, 1);
            for &x in v {
                fnv(&mut id, x as u64);
            }
        }
        Ok(Arc::new(AlgebraContext { lie: lie.clone(), ring, kind, gens, index, psi_p, brackets, id }))
    }

    fn sorted_units(lie: &LieDatum, pred: impl Fn(i64) -> bool) -> Vec<(usize, usize)> {
        let n = lie.n();
        let mut v: Vec<(i64, usize, usize)> = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let d = lie.deg(i, j);
                if pred(d) {
                    v.push((d, i, j));
                }
            }
        }
        v.sort();
        v.into_iter().map(|(_, i, j)| (i, j)).collect()
    }

    /// Matrix units of 𝔭 in canonical order.
    pub fn p_units(lie: &LieDatum) -> Vec<(usize, usize)> {
        Self::sorted_units(lie, |d| d >= 0)
    }

    /// Matrix units of 𝔪 in canonical order.
    pub fn m_units(lie: &LieDatum) -> Vec<(usize, usize)> {
        Self::sorted_units(lie, |d| d < 0)
    }

    /// `U(𝔤)` with 𝔪-generators last.
    pub fn enveloping_gl(lie: &LieDatum, ring: Ring) -> Arc<Self> {
        let mut gens = Self::p_units(lie);
        gens.extend(Self::m_units(lie));
        Self::build(lie, ring, ContextKind::Gl, gens, None).expect("gl_N is closed")
    }

    /// `U(𝔭)`.
    pub fn enveloping_parabolic(lie: &LieDatum, ring: Ring) -> Arc<Self> {
        Self::build(lie, ring, ContextKind::Parabolic, Self::p_units(lie), None).expect("𝔭 is closed")
    }

    /// `U_χ(𝔤)` over 𝔽_p, 𝔪-generators last.
    pub fn reduced_gl(lie: &LieDatum, p: u64) -> Result<Arc<Self>> {
        let ring = Ring::prime_field(p).ok_or(Error::UnsupportedCharacteristic(p))?;
        let mut gens = Self::p_units(lie);
        gens.extend(Self::m_units(lie));
        let psi = gens.iter().map(|&(i, j)| lie.chi(i, j) as i128).collect();
        Self::build(lie, ring, ContextKind::Gl, gens, Some(psi))
    }

    /// `U_0(𝔭)` over 𝔽_p.
    pub fn reduced_parabolic(lie: &LieDatum, p: u64) -> Result<Arc<Self>> {
        let ring = Ring::prime_field(p).ok_or(Error::UnsupportedCharacteristic(p))?;
        let gens = Self::p_units(lie);
        let psi = vec![0; gens.len()];
        Self::build(lie, ring, ContextKind::Parabolic, gens, Some(psi))
    }

    pub fn lie(&self) -> &LieDatum {
        &self.lie
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn kind(&self) -> ContextKind {
        self.kind
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn is_reduced(&self) -> bool {
        self.psi_p.is_some()
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[(usize, usize)] {
        &self.gens
    }

    pub fn unit(&self, g: Gen) -> (usize, usize) {
        self.gens[g as usize]
    }

    pub fn gen(&self, i: usize, j: usize) -> Result<Gen> {
        let n = self.lie.n();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange(format!("e[{i},{j}] with N = {n}")));
        }
        self.index[(i - 1) * n + j - 1].ok_or(Error::NotInContext(i, j))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.gen(i, j).is_ok()
    }

    /// `[g_a, g_b]` as a combination of generators.
    pub fn bracket_gens(&self, a: Gen, b: Gen) -> &[(Gen, i128)] {
        &self.brackets[a as usize * self.gens.len() + b as usize]
    }

    /// Kazhdan degree of a generator.
    pub fn kazhdan_of(&self, g: Gen) -> i64 {
        let (i, j) = self.unit(g);
        self.lie.kazhdan(i, j)
    }

    /// Number of leading generators shared verbatim with `other`.
    fn is_prefix_of(&self, other: &AlgebraContext) -> bool {
        self.ring == other.ring
            && self.lie == other.lie
            && self.gens.len() <= other.gens.len()
            && self.gens[..] == other.gens[..self.gens.len()]
    }

    /// `[e_{i,j}, e_{k,l}] = δ_{j,k} e_{i,l} − δ_{l,i} e_{k,j}`.
    pub fn bracket(self: &Arc<Self>, a: (usize, usize), b: (usize, usize)) -> Result<Element> {
        let ga = self.gen(a.0, a.1)?;
        let gb = self.gen(b.0, b.1)?;
        let mut out = Element::zero(self);
        for &(h, c) in self.bracket_gens(ga, gb) {
            out.add_term(Monomial::generator(h), c);
        }
        Ok(out)
    }
}

/// An ordered monomial: strictly increasing generators with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Gen, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(g: Gen) -> Self {
        Monomial(vec![(g, 1)])
    }

    /// From `(generator, exponent)` pairs; zero exponents are dropped.
    pub fn from_pairs(mut pairs: Vec<(Gen, u32)>) -> Self {
        pairs.retain(|p| p.1 > 0);
        pairs.sort();
        pairs.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        Monomial(pairs)
    }

    pub fn pairs(&self) -> &[(Gen, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Gen) -> u32 {
        self.0.iter().find(|p| p.0 == g).map_or(0, |p| p.1)
    }

    /// Total degree `|a|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    /// Kazhdan degree `|a|_e`.
    pub fn kazhdan(&self, ctx: &AlgebraContext) -> i64 {
        self.0.iter().map(|&(g, a)| ctx.kazhdan_of(g) * a as i64).sum()
    }

    /// The generators with multiplicity, in order.
    pub fn factors(&self) -> Vec<Gen> {
        let mut v = Vec::with_capacity(self.degree() as usize);
        for &(g, a) in &self.0 {
            for _ in 0..a {
                v.push(g);
            }
        }
        v
    }

    fn last(&self) -> Option<(Gen, u32)> {
        self.0.last().copied()
    }

    /// Drop one copy of the last generator.
    fn without_last(&self) -> Monomial {
        let mut v = self.0.clone();
        let l = v.last_mut().expect("nonempty");
        if l.1 == 1 {
            v.pop();
        } else {
            l.1 -= 1;
        }
        Monomial(v)
    }

    /// Append `g`, which must be ≥ every generator present.
    fn appended(&self, g: Gen) -> Monomial {
        let mut v = self.0.clone();
        match v.last_mut() {
            Some(l) if l.0 == g => l.1 += 1,
            _ => v.push((g, 1)),
        }
        Monomial(v)
    }
}

/// A sparse linear combination of ordered monomials in a context.
#[derive(Clone)]
pub struct Element {
    ctx: Arc<AlgebraContext>,
    terms: BTreeMap<Monomial, i128>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.id == other.ctx.id && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

impl Element {
    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        Element { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(ctx: &Arc<AlgebraContext>, c: i128) -> Self {
        let mut e = Element::zero(ctx);
        e.add_term(Monomial::one(), c);
        e
    }

    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        Element::scalar(ctx, 1)
    }

    /// The matrix unit `e[i,j]`.
    pub fn unit(ctx: &Arc<AlgebraContext>, i: usize, j: usize) -> Result<Self> {
        let g = ctx.gen(i, j)?;
        let mut e = Element::zero(ctx);
        e.add_term(Monomial::generator(g), 1);
        Ok(e)
    }

    /// A single already-ordered monomial; exponents are not reduced here.
    pub fn monomial(ctx: &Arc<AlgebraContext>, m: Monomial, c: i128) -> Self {
        let mut e = Element::zero(ctx);
        e.add_term(m, c);
        e
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, i128> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> i128 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: i128) {
        let ring = self.ctx.ring;
        let c = ring.reduce(c);
        if ring.is_zero(c) {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(*o.get(), c);
                if ring.is_zero(s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.ctx.id != other.ctx.id {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = self.clone();
        let ring = self.ctx.ring;
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), ring.neg(c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> Element {
        self.scale(-1)
    }

    pub fn scale(&self, c: i128) -> Element {
        let ring = self.ctx.ring;
        let mut out = Element::zero(&self.ctx);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), ring.mul(a, c));
        }
        out
    }

    /// Largest total degree of a monomial (0 for zero).
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn max_kazhdan(&self) -> i64 {
        self.terms.keys().map(|m| m.kazhdan(&self.ctx)).max().unwrap_or(0)
    }

    /// Drop every monomial of Kazhdan degree above `bound`.
    pub fn truncated(&self, bound: i64) -> Element {
        let mut out = Element::zero(&self.ctx);
        for (m, &c) in &self.terms {
            if m.kazhdan(&self.ctx) <= bound {
                out.terms.insert(m.clone(), c);
            }
        }
        out
    }

    /// The constant term.
    pub fn constant(&self) -> i128 {
        self.coeff(&Monomial::one())
    }

    /// Stable text form: `c * e[i,j]^a e[k,l] + …` in canonical order.
    pub fn dump(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                let _ = write!(s, " {sign} ");
            }
            let _ = write!(s, "{abs}");
            if !m.is_one() {
                s.push_str(" *");
                for &(g, a) in m.pairs() {
                    let (i, j) = self.ctx.unit(g);
                    let _ = write!(s, " e[{i},{j}]");
                    if a > 1 {
                        let _ = write!(s, "^{a}");
                    }
                }
            }
        }
        s
    }

    /// Reinterpret in a context whose generator list starts with this one's.
    pub fn embed_into(&self, target: &Arc<AlgebraContext>) -> Result<Element> {
        if !self.ctx.is_prefix_of(target) {
            return Err(Error::ContextMismatch);
        }
        Ok(Element { ctx: target.clone(), terms: self.terms.clone() })
    }
}

type Terms = Rc<[(Monomial, i128)]>;

/// Memoizing multiplier for one context.
pub struct Straightener {
    ctx: Arc<AlgebraContext>,
    cache: HashMap<(Monomial, Gen), Terms>,
}

fn accumulate(acc: &mut HashMap<Monomial, i128>, ring: Ring, m: &Monomial, c: i128) {
    if ring.is_zero(c) {
        return;
    }
    let e = acc.entry(m.clone()).or_insert(0);
    *e = ring.add(*e, c);
}

fn finish(acc: HashMap<Monomial, i128>, ring: Ring) -> Terms {
    let mut v: Vec<(Monomial, i128)> = acc.into_iter().filter(|(_, c)| !ring.is_zero(*c)).collect();
    v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    v.into()
}

impl Straightener {
    pub fn new(ctx: &Arc<AlgebraContext>) -> Self {
        Straightener { ctx: ctx.clone(), cache: HashMap::new() }
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn clear(&mut self) {
        self.cache.clear();
    }

    /// `m · g` in normal form.
    pub fn mono_times_gen(&mut self, m: &Monomial, g: Gen) -> Terms {
        let key = (m.clone(), g);
        if let Some(t) = self.cache.get(&key) {
            return t.clone();
        }
        let ring = self.ctx.ring;
        let out: Terms = match m.last() {
            None => vec![(Monomial::generator(g), 1)].into(),
            Some((x, _)) if g > x => vec![(m.appended(g), 1)].into(),
            Some((x, a)) if g == x => {
                let grown = m.appended(g);
                match &self.ctx.psi_p {
                    Some(psi) if (a + 1) as u64 == ring.characteristic() => {
                        // g^p = g^{[p]} + ψ(g)^p with g^{[p]} = g for diagonal units, else 0
                        let rest = Monomial(m.0[..m.0.len() - 1].to_vec());
                        let mut acc = HashMap::new();
                        let (i, j) = self.ctx.unit(g);
                        if i == j {
                            accumulate(&mut acc, ring, &rest.appended(g), 1);
                        }
                        accumulate(&mut acc, ring, &rest, psi[g as usize]);
                        finish(acc, ring)
                    }
                    _ => vec![(grown, 1)].into(),
                }
            }
            Some((x, _)) => {
                // r·x·g = (r·g)·x + r·[x,g]
                let r = m.without_last();
                let mut acc = HashMap::new();
                let rg = self.mono_times_gen(&r, g);
                for (mon, c) in rg.iter() {
                    let t = self.mono_times_gen(mon, x);
                    for (mm, cc) in t.iter() {
                        accumulate(&mut acc, ring, mm, ring.mul(*c, *cc));
                    }
                }
                let br: Vec<(Gen, i128)> = self.ctx.bracket_gens(x, g).to_vec();
                for (h, c) in br {
                    let t = self.mono_times_gen(&r, h);
                    for (mm, cc) in t.iter() {
                        accumulate(&mut acc, ring, mm, ring.mul(c, *cc));
                    }
                }
                finish(acc, ring)
            }
        };
        self.cache.insert(key, out.clone());
        out
    }

    /// `m · m'` for monomials.
    pub fn mono_times_mono(&mut self, m: &Monomial, right: &Monomial) -> Vec<(Monomial, i128)> {
        let ring = self.ctx.ring;
        let mut cur: Vec<(Monomial, i128)> = vec![(m.clone(), 1)];
        for g in right.factors() {
            let mut acc = HashMap::new();
            for (mon, c) in &cur {
                for (mm, cc) in self.mono_times_gen(mon, g).iter() {
                    accumulate(&mut acc, ring, mm, ring.mul(*c, *cc));
                }
            }
            cur = acc.into_iter().filter(|(_, c)| !ring.is_zero(*c)).collect();
        }
        cur
    }

    fn own(&self, x: &Element) -> Result<()> {
        if x.ctx.id != self.ctx.id {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Straightened product `x · y`.
    pub fn mul(&mut self, x: &Element, y: &Element) -> Result<Element> {
        self.own(x)?;
        self.own(y)?;
        let ring = self.ctx.ring;
        let mut acc: HashMap<Monomial, i128> = HashMap::new();
        for (mr, &cr) in &y.terms {
            let factors = mr.factors();
            // right-multiply all of x by the factors of mr, one generator at a time
            let mut cur: HashMap<Monomial, i128> = x.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
            for &g in &factors {
                let mut next = HashMap::with_capacity(cur.len());
                for (mon, c) in &cur {
                    for (mm, cc) in self.mono_times_gen(mon, g).iter() {
                        accumulate(&mut next, ring, mm, ring.mul(*c, *cc));
                    }
                }
                next.retain(|_, c| !ring.is_zero(*c));
                cur = next;
            }
            for (m, c) in cur {
                accumulate(&mut acc, ring, &m, ring.mul(c, cr));
            }
        }
        let mut out = Element::zero(&self.ctx);
        for (m, c) in acc {
            if !ring.is_zero(c) {
                out.terms.insert(m, c);
            }
        }
        Ok(out)
    }

    /// Product with all monomials above Kazhdan degree `bound` dropped from the result.
    pub fn mul_truncated(&mut self, x: &Element, y: &Element, bound: i64) -> Result<Element> {
        Ok(self.mul(x, y)?.truncated(bound))
    }

    /// `[x, y] = xy − yx`.
    pub fn commutator(&mut self, x: &Element, y: &Element) -> Result<Element> {
        let a = self.mul(x, y)?;
        let b = self.mul(y, x)?;
        a.sub(&b)
    }

    pub fn pow(&mut self, x: &Element, k: u32) -> Result<Element> {
        let mut out = Element::one(&self.ctx);
        for _ in 0..k {
            out = self.mul(&out, x)?;
        }
        Ok(out)
    }

    /// Product of a sequence of matrix units, left to right.
    pub fn word(&mut self, units: &[(usize, usize)]) -> Result<Element> {
        let mut out = Element::one(&self.ctx);
        for &(i, j) in units {
            let u = Element::unit(&self.ctx, i, j)?;
            out = self.mul(&out, &u)?;
        }
        Ok(out)
    }

    /// `g^p` rewritten by the reduction rule (identical to straightening `g·…·g`).
    pub fn reduce_power(&mut self, i: usize, j: usize) -> Result<Element> {
        let p = self.ctx.ring.characteristic();
        if p == 0 {
            return Err(Error::UnsupportedCharacteristic(0));
        }
        let u = Element::unit(&self.ctx, i, j)?;
        self.pow(&u, p as u32)
    }
}

/// `U(𝔤)` (𝔪 last) together with `U(𝔭)` for the projection and twisted action.
pub struct Parabolic {
    lie: LieDatum,
    ug: Arc<AlgebraContext>,
    up: Arc<AlgebraContext>,
    n_p: usize,
    sg: Straightener,
    sp: Straightener,
}

impl Parabolic {
    pub fn new(lie: &LieDatum, ring: Ring) -> Self {
        let ug = AlgebraContext::enveloping_gl(lie, ring);
        let up = AlgebraContext::enveloping_parabolic(lie, ring);
        let n_p = up.n_gens();
        // χ must vanish on [𝔪,𝔪] for the 𝔪-part evaluation to be order independent
        for a in n_p..ug.n_gens() {
            for b in n_p..ug.n_gens() {
                for &(h, _) in ug.bracket_gens(a as Gen, b as Gen) {
                    let (i, j) = ug.unit(h);
                    assert!(h as usize >= n_p && lie.chi(i, j) == 0, "χ does not vanish on [m,m]");
                }
            }
        }
        let sg = Straightener::new(&ug);
        let sp = Straightener::new(&up);
        Parabolic { lie: lie.clone(), ug, up, n_p, sg, sp }
    }

    pub fn lie(&self) -> &LieDatum {
        &self.lie
    }

    pub fn gl(&self) -> &Arc<AlgebraContext> {
        &self.ug
    }

    pub fn parabolic(&self) -> &Arc<AlgebraContext> {
        &self.up
    }

    pub fn gl_straightener(&mut self) -> &mut Straightener {
        &mut self.sg
    }

    pub fn straightener(&mut self) -> &mut Straightener {
        &mut self.sp
    }

    /// Multiply in `U(𝔭)`.
    pub fn mul(&mut self, x: &Element, y: &Element) -> Result<Element> {
        self.sp.mul(x, y)
    }

    pub fn commutator(&mut self, x: &Element, y: &Element) -> Result<Element> {
        self.sp.commutator(x, y)
    }

    /// `pr : U(𝔤) → U(𝔭)` along `U(𝔤)𝔪_χ`.
    pub fn project(&self, x: &Element) -> Result<Element> {
        if x.ctx.id != self.ug.id {
            return Err(Error::ContextMismatch);
        }
        let ring = self.ug.ring;
        let mut out = Element::zero(&self.up);
        for (m, &c) in &x.terms {
            let split = m.0.iter().position(|&(g, _)| g as usize >= self.n_p).unwrap_or(m.0.len());
            let mut coef = c;
            for &(g, _) in &m.0[split..] {
                let (i, j) = self.ug.unit(g);
                if self.lie.chi(i, j) == 0 {
                    coef = 0;
                    break;
                }
            }
            if coef != 0 {
                out.add_term(Monomial(m.0[..split].to_vec()), ring.reduce(coef));
            }
        }
        Ok(out)
    }

    /// Image of `e[k,l]` under `Ad u_{i,j}(s)` as a combination of matrix units.
    fn adjoint_unit(i: usize, j: usize, s: i128, k: usize, l: usize) -> Vec<((usize, usize), i128)> {
        let mut v = vec![((k, l), 1)];
        if j == k {
            v.push(((i, l), s));
        }
        if l == i {
            v.push(((k, j), -s));
        }
        if j == k && l == i {
            v.push(((i, j), -s * s));
        }
        v
    }

    /// Twisted adjoint action of `u_{i,j}(s) ∈ M` on `x ∈ U(𝔭)`.
    pub fn twisted_adjoint(&mut self, i: usize, j: usize, s: i128, x: &Element) -> Result<Element> {
        if x.ctx.id != self.up.id {
            return Err(Error::ContextMismatch);
        }
        let n = self.lie.n();
        if i == 0 || j == 0 || i > n || j > n || !self.lie.in_m(i, j) {
            return Err(Error::NotMRoot(i, j));
        }
        let ring = self.ug.ring;
        let s = ring.reduce(s);
        let mut out = Element::zero(&self.up);
        let mut images: HashMap<Gen, Element> = HashMap::new();
        for (m, &c) in &x.terms {
            // pr(a·b) = pr(a·pr(b)) since U(𝔤)𝔪_χ is a left ideal; fold from the right
            let mut acc = Element::one(&self.up);
            for &g in m.factors().iter().rev() {
                if !images.contains_key(&g) {
                    let (k, l) = self.up.unit(g);
                    let mut img = Element::zero(&self.ug);
                    for ((a, b), c) in Self::adjoint_unit(i, j, s, k, l) {
                        img.add_term(Monomial::generator(self.ug.gen(a, b)?), c);
                    }
                    images.insert(g, img);
                }
                let lifted = acc.embed_into(&self.ug)?;
                let prod = self.sg.mul(&images[&g], &lifted)?;
                acc = self.project(&prod)?;
            }
            for (mm, &cc) in &acc.terms {
                out.add_term(mm.clone(), ring.mul(c, cc));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pyramid::{Partition, Pyramid};

    fn lie(parts: &[usize]) -> LieDatum {
        LieDatum::new(&Pyramid::left_justified(Partition::new(parts.to_vec()).unwrap()))
    }

    #[test]
    fn structure_constants() {
        let ctx = AlgebraContext::enveloping_gl(&lie(&[4]), Ring::INTEGERS);
        let b = ctx.bracket((1, 2), (2, 1)).unwrap();
        let expect = Element::unit(&ctx, 1, 1).unwrap().sub(&Element::unit(&ctx, 2, 2).unwrap()).unwrap();
        assert_eq!(b, expect);
        assert!(ctx.bracket((1, 2), (3, 4)).unwrap().is_zero());
        assert_eq!(ctx.bracket((1, 2), (2, 3)).unwrap(), Element::unit(&ctx, 1, 3).unwrap());
    }

    #[test]
    fn single_swap() {
        let ctx = AlgebraContext::enveloping_gl(&lie(&[2]), Ring::INTEGERS);
        let mut st = Straightener::new(&ctx);
        let prod = st.word(&[(2, 1), (1, 2)]).unwrap();
        // e[1,2] precedes e[2,1] in this order
        assert!(ctx.gen(1, 2).unwrap() < ctx.gen(2, 1).unwrap());
        let expect = st
            .word(&[(1, 2), (2, 1)])
            .unwrap()
            .sub(&Element::unit(&ctx, 1, 1).unwrap())
            .unwrap()
            .add(&Element::unit(&ctx, 2, 2).unwrap())
            .unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn reduction_rules() {
        let l = lie(&[2, 5]);
        let ctx = AlgebraContext::reduced_gl(&l, 3).unwrap();
        let mut st = Straightener::new(&ctx);
        assert!(st.reduce_power(1, 2).unwrap().is_zero());
        assert_eq!(st.reduce_power(2, 1).unwrap(), Element::one(&ctx));
        let cp = AlgebraContext::reduced_parabolic(&l, 3).unwrap();
        let mut sp = Straightener::new(&cp);
        assert_eq!(sp.reduce_power(1, 1).unwrap(), Element::unit(&cp, 1, 1).unwrap());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let l = lie(&[2]);
        let a = AlgebraContext::enveloping_gl(&l, Ring::INTEGERS);
        let b = AlgebraContext::enveloping_gl(&l, Ring::new(3).unwrap());
        let x = Element::one(&a);
        let y = Element::one(&b);
        assert_eq!(x.add(&y), Err(Error::ContextMismatch));
        assert!(Straightener::new(&a).mul(&x, &y).is_err());
    }

    #[test]
    fn dump_is_stable() {
        let ctx = AlgebraContext::enveloping_gl(&lie(&[2]), Ring::INTEGERS);
        let mut st = Straightener::new(&ctx);
        let prod = st.word(&[(2, 1), (1, 2), (1, 2)]).unwrap();
        assert_eq!(prod.dump(), "-2 * e[1,1] e[1,2] + 2 * e[2,2] e[1,2] + 2 * e[1,2] + 1 * e[1,2]^2 e[2,1]");
        assert_eq!(Element::zero(&ctx).dump(), "0");
        assert_eq!(Element::scalar(&ctx, -3).dump(), "-3");
    }

    #[test]
    fn projection_examples() {
        let l = lie(&[2, 5]);
        let mut par = Parabolic::new(&l, Ring::INTEGERS);
        let ug = par.gl().clone();
        let x = Element::unit(par.parabolic(), 1, 1).unwrap();
        assert_eq!(par.project(&x.embed_into(&ug).unwrap()).unwrap(), x);
        // e[2,1] has χ = 1 when (1,2) is in the support of e
        let prod = par.gl_straightener().word(&[(1, 1), (2, 1)]).unwrap();
        assert_eq!(par.project(&prod).unwrap(), x);
    }

    #[test]
    fn twisted_identity_cases() {
        let l = lie(&[2, 5]);
        let mut par = Parabolic::new(&l, Ring::INTEGERS);
        let up = par.parabolic().clone();
        let one = Element::one(&up);
        assert_eq!(par.twisted_adjoint(4, 1, 5, &one).unwrap(), one);
        let x = Element::unit(&up, 1, 2).unwrap();
        assert_eq!(par.twisted_adjoint(2, 1, 0, &x).unwrap(), x);
        assert_eq!(par.twisted_adjoint(1, 3, 1, &x), Err(Error::NotMRoot(1, 3)));
    }
}
