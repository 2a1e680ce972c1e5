//! The box category: objects `[1]^n`, generated by faces, degeneracies and
//! connections.
//!
//! A vertex of `[1]^n` is a bitmask with coordinate `i` stored in bit `i-1`.
//! Words are written in composition order, so the rightmost generator is
//! applied first.

use crate::error::{domain, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// `∂_{i,ε}: [1]^{n-1} → [1]^n`, inserting `ε` at slot `i`.
    Face { i: u8, eps: u8 },
    /// `σ_i: [1]^n → [1]^{n-1}`, forgetting coordinate `i`.
    Degen { i: u8 },
    /// `γ_{i,ε}: [1]^n → [1]^{n-1}`; `ε = 0` takes the max of coordinates
    /// `i, i+1`, `ε = 1` the min.
    Conn { i: u8, eps: u8 },
}

pub use Generator::{Conn, Degen, Face};

pub fn face(i: usize, eps: u8) -> Generator {
    Face { i: i as u8, eps }
}

pub fn degen(i: usize) -> Generator {
    Degen { i: i as u8 }
}

pub fn conn(i: usize, eps: u8) -> Generator {
    Conn { i: i as u8, eps }
}

#[inline]
pub(crate) fn insert_bit(v: u32, pos: usize, b: u32) -> u32 {
    let low = v & ((1u32 << (pos - 1)) - 1);
    let high = v >> (pos - 1);
    low | (b << (pos - 1)) | (high << pos)
}

#[inline]
pub(crate) fn delete_bit(v: u32, pos: usize) -> u32 {
    let low = v & ((1u32 << (pos - 1)) - 1);
    let high = v >> pos;
    low | (high << (pos - 1))
}

#[inline]
fn bit(v: u32, pos: usize) -> u32 {
    (v >> (pos - 1)) & 1
}

impl Generator {
    pub fn index(&self) -> usize {
        match *self {
            Face { i, .. } | Degen { i } | Conn { i, .. } => i as usize,
        }
    }

    /// Codomain dimension when the generator is applied to `[1]^src`.
    pub fn target_dim(&self, src: usize) -> Option<usize> {
        let i = self.index();
        match *self {
            Face { eps, .. } => (i >= 1 && i <= src + 1 && eps <= 1).then_some(src + 1),
            Degen { .. } => (i >= 1 && i <= src).then(|| src - 1),
            Conn { eps, .. } => (i >= 1 && i < src && eps <= 1).then(|| src - 1),
        }
    }

    /// Domain dimension when the generator lands in `[1]^dst`; this is the
    /// dimension of `x·g` for an `dst`-cube `x`.
    pub fn source_dim(&self, dst: usize) -> Option<usize> {
        let i = self.index();
        match *self {
            Face { eps, .. } => (dst >= 1 && i >= 1 && i <= dst && eps <= 1).then(|| dst - 1),
            Degen { .. } => (i >= 1 && i <= dst + 1).then_some(dst + 1),
            Conn { eps, .. } => (i >= 1 && i <= dst && eps <= 1).then_some(dst + 1),
        }
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        match *self {
            Face { i, eps } => insert_bit(v, i as usize, eps as u32),
            Degen { i } => delete_bit(v, i as usize),
            Conn { i, eps } => {
                let i = i as usize;
                let (a, b) = (bit(v, i), bit(v, i + 1));
                let c = if eps == 0 { a | b } else { a & b };
                let w = delete_bit(v, i + 1);
                (w & !(1 << (i - 1))) | (c << (i - 1))
            }
        }
    }

    fn order_key(&self) -> (u8, u8, u8) {
        match *self {
            Degen { i } => (0, 0, i),
            Conn { i, eps } => (1, eps, i),
            Face { i, eps } => (2, eps, i),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Face { i, eps } => write!(f, "d({i},{eps})"),
            Degen { i } => write!(f, "s({i})"),
            Conn { i, eps } => write!(f, "g({i},{eps})"),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Domain(format!("bad generator `{s}`"));
        let (head, rest) = s.split_at(s.find('(').ok_or_else(bad)?);
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums: Vec<u8> = inner
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (head.trim(), nums.as_slice()) {
            ("d", [i, e]) if *e <= 1 && *i >= 1 => Ok(Face { i: *i, eps: *e }),
            ("s", [i]) if *i >= 1 => Ok(Degen { i: *i }),
            ("g", [i, e]) if *e <= 1 && *i >= 1 => Ok(Conn { i: *i, eps: *e }),
            _ => Err(bad()),
        }
    }
}

/// Parse a `;`-separated word; `id` and the empty string are the empty word.
pub fn parse_word(s: &str) -> Result<Vec<Generator>> {
    let s = s.trim();
    if s.is_empty() || s == "id" {
        return Ok(Vec::new());
    }
    s.split(';').map(|t| t.parse()).collect()
}

pub fn word_to_string(w: &[Generator]) -> String {
    if w.is_empty() {
        "id".to_string()
    } else {
        w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(";")
    }
}

/// Dimensions visited by a word applied to `[1]^src`, rightmost first.
pub fn word_dims(src: usize, word: &[Generator]) -> Result<Vec<usize>> {
    let mut dims = vec![src];
    let mut d = src;
    for g in word.iter().rev() {
        d = g
            .target_dim(d)
            .ok_or_else(|| Error::Domain(format!("{g} does not apply to [1]^{d}")))?;
        dims.push(d);
    }
    Ok(dims)
}

/// A morphism `[1]^src → [1]^dst`, stored as its vertex table. Equality is
/// equality of tables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxMorphism {
    src: u8,
    dst: u8,
    table: Vec<u32>,
}

impl fmt::Debug for BoxMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}→{}: {}]", self.src, self.dst, self.word_string())
    }
}

impl fmt::Display for BoxMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// Result of deciding whether a vertex map lies in the box category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    InBox(BoxMorphism, Vec<Generator>),
    NotInBox,
}

impl BoxMorphism {
    pub const MAX_DIM: usize = 20;

    pub fn identity(n: usize) -> Self {
        BoxMorphism {
            src: n as u8,
            dst: n as u8,
            table: (0..(1u32 << n)).collect(),
        }
    }

    pub fn src(&self) -> usize {
        self.src as usize
    }

    pub fn dst(&self) -> usize {
        self.dst as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.table[v as usize]
    }

    pub fn generator(g: Generator, src: usize) -> Result<Self> {
        Self::from_word(src, &[g])
    }

    pub fn from_word(src: usize, word: &[Generator]) -> Result<Self> {
        if src > Self::MAX_DIM {
            return domain(format!("dimension {src} too large"));
        }
        let dims = word_dims(src, word)?;
        let dst = *dims.last().unwrap();
        if dst > Self::MAX_DIM {
            return domain(format!("dimension {dst} too large"));
        }
        let table = (0..(1u32 << src))
            .map(|v| word.iter().rev().fold(v, |acc, g| g.apply(acc)))
            .collect();
        Ok(BoxMorphism {
            src: src as u8,
            dst: dst as u8,
            table,
        })
    }

    pub fn parse(src: usize, word: &str) -> Result<Self> {
        Self::from_word(src, &parse_word(word)?)
    }

    /// A table that is known to come from a box map.
    pub(crate) fn from_table_unchecked(src: usize, dst: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), 1 << src);
        BoxMorphism {
            src: src as u8,
            dst: dst as u8,
            table,
        }
    }

    /// Accept a vertex table only if it is a morphism of the box category.
    pub fn from_table(src: usize, dst: usize, table: Vec<u32>) -> Result<Self> {
        match normal_form(src, dst, &table)? {
            Membership::InBox(m, _) => Ok(m),
            Membership::NotInBox => domain("vertex map is not a box morphism"),
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &BoxMorphism) -> Result<BoxMorphism> {
        if f.dst != self.src {
            return domain(format!(
                "cannot compose [1]^{}→[1]^{} after [1]^{}→[1]^{}",
                self.src, self.dst, f.src, f.dst
            ));
        }
        Ok(BoxMorphism {
            src: f.src,
            dst: self.dst,
            table: f.table.iter().map(|&v| self.table[v as usize]).collect(),
        })
    }

    /// `self × other`, with the coordinates of `self` first.
    pub fn product(&self, other: &BoxMorphism) -> BoxMorphism {
        let a = self.src();
        let p = self.dst();
        let src = a + other.src();
        let mask = (1u32 << a) - 1;
        let table = (0..(1u32 << src))
            .map(|v| self.table[(v & mask) as usize] | (other.table[(v >> a) as usize] << p))
            .collect();
        BoxMorphism {
            src: src as u8,
            dst: (p + other.dst()) as u8,
            table,
        }
    }

    /// Whether the map does not read coordinate `i`.
    pub fn ignores(&self, i: usize) -> bool {
        let b = 1u32 << (i - 1);
        (0..(1u32 << self.src)).all(|v| self.table[v as usize] == self.table[(v ^ b) as usize])
    }

    /// Output coordinate `j` as a constant, if it is one.
    pub fn constant_coord(&self, j: usize) -> Option<u32> {
        let first = bit(self.table[0], j);
        self.table
            .iter()
            .all(|&w| bit(w, j) == first)
            .then_some(first)
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = HashSet::new();
        for &w in &self.table {
            seen.insert(w);
        }
        seen.len() == 1 << self.dst
    }

    /// Canonical generator word.
    pub fn word(&self) -> Vec<Generator> {
        match normal_form(self.src(), self.dst(), &self.table) {
            Ok(Membership::InBox(_, w)) => w,
            _ => unreachable!("box morphisms have normal forms"),
        }
    }

    pub fn word_string(&self) -> String {
        word_to_string(&self.word())
    }

    /// Precompose with a generator: `self ∘ g`.
    pub fn after(&self, g: Generator) -> Result<BoxMorphism> {
        let gs = g
            .source_dim(self.src())
            .ok_or_else(|| Error::Domain(format!("{g} does not land in [1]^{}", self.src)))?;
        self.compose(&BoxMorphism::generator(g, gs)?)
    }
}

fn is_monotone(src: usize, table: &[u32]) -> bool {
    for v in 0..(1u32 << src) {
        for j in 0..src {
            let b = 1u32 << j;
            if v & b == 0 {
                let (x, y) = (table[v as usize], table[(v | b) as usize]);
                if x & !y != 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn factors_through(d: usize, e: &[u32], g: Generator) -> bool {
    match g {
        Degen { i } => {
            let b = 1u32 << (i - 1);
            (0..(1u32 << d)).all(|v| e[v as usize] == e[(v ^ b) as usize])
        }
        Conn { i, eps } => {
            let i = i as usize;
            let ba = 1u32 << (i - 1);
            let bb = 1u32 << i;
            (0..(1u32 << d)).filter(|v| v & (ba | bb) == 0).all(|v| {
                let x01 = e[(v | bb) as usize];
                let x10 = e[(v | ba) as usize];
                if eps == 0 {
                    x01 == x10 && x10 == e[(v | ba | bb) as usize]
                } else {
                    x01 == x10 && x10 == e[v as usize]
                }
            })
        }
        Face { .. } => false,
    }
}

fn section(g: Generator) -> Generator {
    match g {
        Degen { i } => Face { i, eps: 0 },
        Conn { i, eps } => Face { i: i + 1, eps },
        Face { .. } => unreachable!(),
    }
}

/// Decide membership of a vertex map in the box category and produce its
/// canonical word.
///
/// The word is a face block followed by an epi block. The face block records
/// the fixed coordinates of the image in ascending order. The epi block is
/// built by repeatedly splitting off, as the first-applied generator, the
/// least degeneracy or connection whose fibers the map is constant on.
/// Non-monotone maps are a domain error.
pub fn normal_form(src: usize, dst: usize, table: &[u32]) -> Result<Membership> {
    if src > BoxMorphism::MAX_DIM || dst > BoxMorphism::MAX_DIM {
        return domain("dimension too large");
    }
    if table.len() != 1 << src {
        return domain(format!("table has {} entries, expected {}", table.len(), 1 << src));
    }
    if table.iter().any(|&w| w >= 1 << dst) {
        return domain("table entry outside the codomain");
    }
    if !is_monotone(src, table) {
        return domain("vertex map is not monotone");
    }
    let bottom = table[0];
    let top = table[(1usize << src) - 1];
    let free: Vec<usize> = (1..=dst).filter(|&j| bit(bottom, j) != bit(top, j)).collect();
    let k = free.len();
    let compress = |w: u32| -> u32 {
        free.iter()
            .enumerate()
            .fold(0, |acc, (t, &j)| acc | (bit(w, j) << t))
    };
    let mut e: Vec<u32> = table.iter().map(|&w| compress(w)).collect();
    {
        let mut seen = vec![false; 1 << k];
        for &w in &e {
            seen[w as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return Ok(Membership::NotInBox);
        }
    }
    let mut d = src;
    let mut applied = Vec::new();
    while d > k {
        let cands = (1..=d)
            .map(degen)
            .chain((1..d).map(|i| conn(i, 0)))
            .chain((1..d).map(|i| conn(i, 1)));
        let mut found = None;
        for g in cands {
            if factors_through(d, &e, g) {
                found = Some(g);
                break;
            }
        }
        let Some(g) = found else {
            return Ok(Membership::NotInBox);
        };
        let s = section(g);
        e = (0..(1u32 << (d - 1))).map(|v| e[s.apply(v) as usize]).collect();
        applied.push(g);
        d -= 1;
    }
    if e.iter().enumerate().any(|(v, &w)| v as u32 != w) {
        return Ok(Membership::NotInBox);
    }
    let mut word: Vec<Generator> = Vec::new();
    let fixed: Vec<usize> = (1..=dst).filter(|j| !free.contains(j)).collect();
    for (r, &c) in fixed.iter().enumerate() {
        word.push(face(c - r, bit(bottom, c) as u8));
    }
    word.extend(applied.iter().rev());
    let m = BoxMorphism::from_table_unchecked(src, dst, table.to_vec());
    debug_assert_eq!(BoxMorphism::from_word(src, &word).as_ref(), Ok(&m));
    Ok(Membership::InBox(m, word))
}

/// Every epimorphism `[1]^k → [1]^j`, sorted by table.
pub fn epimorphisms(k: usize, j: usize) -> Vec<BoxMorphism> {
    if j > k {
        return Vec::new();
    }
    let mut frontier = vec![BoxMorphism::identity(k)];
    for d in (j + 1..=k).rev() {
        let mut next = HashSet::new();
        for m in &frontier {
            for g in (1..=d).map(degen).chain((1..d).flat_map(|i| [conn(i, 0), conn(i, 1)])) {
                let gm = BoxMorphism::generator(g, d).unwrap();
                next.insert(gm.compose(m).unwrap());
            }
        }
        frontier = next.into_iter().collect();
    }
    frontier.sort();
    frontier
}

/// Every face inclusion `[1]^j → [1]^n`, sorted by table.
pub fn face_inclusions(j: usize, n: usize) -> Vec<BoxMorphism> {
    if j > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    // choose the fixed coordinates and their values
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != n - j {
            continue;
        }
        let fixed: Vec<usize> = (1..=n).filter(|&c| mask >> (c - 1) & 1 == 1).collect();
        for vals in 0u32..(1 << fixed.len()) {
            let word: Vec<Generator> = fixed
                .iter()
                .enumerate()
                .map(|(r, &c)| face(c - r, ((vals >> r) & 1) as u8))
                .collect();
            out.push(BoxMorphism::from_word(j, &word).unwrap());
        }
    }
    out.sort();
    out
}

/// Every morphism `[1]^k → [1]^n`, sorted by table.
pub fn all_morphisms(k: usize, n: usize) -> Vec<BoxMorphism> {
    let mut out = Vec::new();
    for j in 0..=k.min(n) {
        let faces = face_inclusions(j, n);
        for e in epimorphisms(k, j) {
            for f in &faces {
                out.push(f.compose(&e).unwrap());
            }
        }
    }
    out.sort();
    out
}

/// Parse a map description: `max2`, `min2`, `idN`, a word `src:word`, or an
/// explicit table `m>n:b,b,...` listing the image of each vertex as a bit
/// string `x1x2...xn` (vertices in binary counting order, `x1` fastest).
pub fn parse_map_spec(s: &str) -> Result<(usize, usize, Vec<u32>)> {
    let s = s.trim();
    match s {
        "max2" => return Ok((2, 1, vec![0, 1, 1, 1])),
        "min2" => return Ok((2, 1, vec![0, 0, 0, 1])),
        _ => {}
    }
    if let Some(n) = s.strip_prefix("id").and_then(|r| r.parse::<usize>().ok()) {
        let m = BoxMorphism::identity(n);
        return Ok((n, n, m.table));
    }
    let (head, body) = s
        .split_once(':')
        .ok_or_else(|| Error::Domain(format!("unrecognised map `{s}`")))?;
    if let Some((m, n)) = head.split_once('>') {
        let m: usize = m.trim().parse().map_err(|_| Error::Domain("bad source".into()))?;
        let n: usize = n.trim().parse().map_err(|_| Error::Domain("bad target".into()))?;
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 1 << m {
            return domain(format!("expected {} vertex images", 1 << m));
        }
        let mut table = Vec::new();
        for p in parts {
            if p.len() != n || !p.chars().all(|c| c == '0' || c == '1') {
                return domain(format!("bad vertex `{p}`"));
            }
            table.push(
                p.chars()
                    .enumerate()
                    .fold(0u32, |acc, (t, c)| acc | (((c == '1') as u32) << t)),
            );
        }
        Ok((m, n, table))
    } else {
        let src: usize = head.trim().parse().map_err(|_| Error::Domain("bad source".into()))?;
        let m = BoxMorphism::parse(src, body)?;
        Ok((m.src(), m.dst(), m.table))
    }
}

/// One instance of a cubical identity, `lhs = rhs` as maps out of `[1]^src`.
#[derive(Clone, Debug)]
pub struct IdentityInstance {
    pub label: &'static str,
    pub src: usize,
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
}

impl IdentityInstance {
    /// Largest dimension touched by either side.
    pub fn ambient(&self) -> Option<usize> {
        let a = word_dims(self.src, &self.lhs).ok()?;
        let b = word_dims(self.src, &self.rhs).ok()?;
        a.into_iter().chain(b).max()
    }

    pub fn holds(&self) -> bool {
        match (
            BoxMorphism::from_word(self.src, &self.lhs),
            BoxMorphism::from_word(self.src, &self.rhs),
        ) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

/// All instances of the cubical identities whose ambient dimension is at most
/// `max_dim`. Each instance is included when its left side is defined; the
/// right side must then be defined as well.
pub fn cubical_identities(max_dim: usize) -> Vec<IdentityInstance> {
    let mut out = Vec::new();
    let r = max_dim + 2;
    let mut push = |label: &'static str, src: usize, lhs: Vec<Generator>, rhs: Vec<Generator>| {
        let Ok(dims) = word_dims(src, &lhs) else {
            return;
        };
        if dims.iter().any(|&d| d > max_dim) {
            return;
        }
        let rdims = word_dims(src, &rhs).unwrap_or_default();
        if rdims.iter().any(|&d| d > max_dim) {
            return;
        }
        out.push(IdentityInstance { label, src, lhs, rhs });
    };
    for s in 0..=max_dim {
        for i in 1..r {
            for j in 1..r {
                for e in 0..2u8 {
                    for e2 in 0..2u8 {
                        if j <= i {
                            push("dd", s, vec![face(j, e2), face(i, e)], vec![face(i + 1, e), face(j, e2)]);
                        }
                        if j > i {
                            push("gg", s, vec![conn(j, e2), conn(i, e)], vec![conn(i, e), conn(j + 1, e2)]);
                        } else if j == i && e == e2 {
                            push("gg", s, vec![conn(i, e), conn(i, e)], vec![conn(i, e), conn(i + 1, e)]);
                        }
                        let lhs = vec![conn(j, e2), face(i, e)];
                        if j + 1 < i {
                            push("gd", s, lhs, vec![face(i - 1, e), conn(j, e2)]);
                        } else if (j + 1 == i || j == i) && e == e2 {
                            push("gd", s, lhs, vec![]);
                        } else if j + 1 == i || j == i {
                            push("gd", s, lhs, vec![face(j, e), degen(j)]);
                        } else {
                            push("gd", s, lhs, vec![face(i, e), conn(j - 1, e2)]);
                        }
                    }
                    let lhs = vec![degen(j), face(i, e)];
                    if j < i {
                        push("sd", s, lhs, vec![face(i - 1, e), degen(j)]);
                    } else if j == i {
                        push("sd", s, lhs, vec![]);
                    } else {
                        push("sd", s, lhs, vec![face(i, e), degen(j - 1)]);
                    }
                    let lhs = vec![degen(j), conn(i, e)];
                    if j < i {
                        push("sg", s, lhs, vec![conn(i - 1, e), degen(j)]);
                    } else if j == i {
                        push("sg", s, lhs, vec![degen(i), degen(i)]);
                    } else {
                        push("sg", s, lhs, vec![conn(i, e), degen(j + 1)]);
                    }
                }
                if j <= i {
                    push("ss", s, vec![degen(i), degen(j)], vec![degen(j), degen(i + 1)]);
                }
            }
        }
    }
    out.sort_by(|a, b| (a.label, a.src, &a.lhs).cmp(&(b.label, b.src, &b.lhs)));
    out.dedup_by(|a, b| a.label == b.label && a.src == b.src && a.lhs == b.lhs);
    out
}

/// Order used for comparing generators in canonical words.
pub fn generator_order(a: &Generator, b: &Generator) -> std::cmp::Ordering {
    a.order_key().cmp(&b.order_key())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max2_is_negative_connection() {
        let (m, n, t) = parse_map_spec("max2").unwrap();
        let nf = normal_form(m, n, &t).unwrap();
        match nf {
            Membership::InBox(_, w) => assert_eq!(word_to_string(&w), "g(1,0)"),
            _ => panic!(),
        }
    }

    #[test]
    fn xor_is_rejected() {
        assert!(normal_form(2, 1, &[0, 1, 1, 0]).is_err());
    }

    #[test]
    fn swap_is_not_in_box() {
        // monotone and bijective, but a permutation of coordinates
        assert_eq!(normal_form(2, 2, &[0, 2, 1, 3]).unwrap(), Membership::NotInBox);
    }

    #[test]
    fn diagonal_is_not_in_box() {
        assert_eq!(normal_form(1, 2, &[0, 3]).unwrap(), Membership::NotInBox);
    }

    #[test]
    fn face_then_degeneracy_is_identity() {
        let m = BoxMorphism::from_word(2, &[degen(1), face(1, 1)]).unwrap();
        assert_eq!(m, BoxMorphism::identity(2));
        assert_eq!(m.word_string(), "id");
    }

    #[test]
    fn generator_round_trip() {
        for s in ["d(1,0)", "s(3)", "g(2,1)"] {
            assert_eq!(s.parse::<Generator>().unwrap().to_string(), s);
        }
        assert!("d(0,0)".parse::<Generator>().is_err());
        assert!("q(1)".parse::<Generator>().is_err());
    }

    #[test]
    fn morphism_counts() {
        // [1]^1 → [1]^1: identity and two constants
        assert_eq!(all_morphisms(1, 1).len(), 3);
        // [1]^2 → [1]^1: two projections, max, min, two constants
        assert_eq!(all_morphisms(2, 1).len(), 6);
        assert_eq!(face_inclusions(1, 2).len(), 4);
    }

    #[test]
    fn identity_families_present() {
        let ids = cubical_identities(3);
        for label in ["dd", "sd", "ss", "gg", "gd", "sg"] {
            assert!(ids.iter().any(|x| x.label == label), "{label}");
        }
        assert!(ids.iter().all(|x| x.holds()));
    }
}
