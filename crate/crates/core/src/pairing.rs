//! Temperley-Lieb diagrams as noncrossing perfect matchings between the
//! bottom and top edges of a rectangle.
//!
//! Points are labelled `B1..Bb` (bottom, left to right) and `T1..Tt` (top,
//! left to right). Noncrossing is tested in the circular boundary order
//! `B1,…,Bb,Tt,…,T1`. Composition stacks diagrams and counts the closed
//! loops it removes; the scalar weight `δ^loops` is applied by callers, so
//! this module stays free of the coefficient ring.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::glue::Gluing;

/// Hard cap on `bottom + top` for enumeration calls.
pub const MAX_ENUM_POINTS: usize = 24;

/// A boundary point of a rectangle diagram, 1-based within its edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum PairingPoint {
    Bottom(usize),
    Top(usize),
}

/// A noncrossing perfect matching between `bottom` and `top` boundary
/// points of a rectangle.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pairing {
    bottom: usize,
    top: usize,
    /// Partner of each point; ids `0..bottom` are B1..Bb, then T1..Tt.
    mate: Vec<usize>,
}

/// Outcome of [`Pairing::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramClass {
    /// Every top point is connected to the bottom.
    pub is_epi: bool,
    /// Every bottom point is connected to the top.
    pub is_monic: bool,
    /// Epi, and every bottom turn-back encloses no other turn-back.
    pub is_non_nested_epi: bool,
}

/// Filter for [`Pairing::enumerate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramFilter {
    All,
    Epi,
    NonNestedEpi,
}

impl Pairing {
    /// Builds and fully validates a pairing from explicit point pairs.
    pub fn new(bottom: usize, top: usize, pairs: &[(PairingPoint, PairingPoint)]) -> Result<Self> {
        let total = bottom + top;
        if !total.is_multiple_of(2) {
            return Err(Error::OddPointCount { bottom, top });
        }
        let id_of = |p: PairingPoint| -> Result<usize> {
            match p {
                PairingPoint::Bottom(i) if i >= 1 && i <= bottom => Ok(i - 1),
                PairingPoint::Top(j) if j >= 1 && j <= top => Ok(bottom + j - 1),
                _ => Err(Error::invalid("pairing", format!("point {p:?} out of range"))),
            }
        };
        let mut mate = vec![usize::MAX; total];
        for &(a, b) in pairs {
            let (x, y) = (id_of(a)?, id_of(b)?);
            if x == y {
                return Err(Error::invalid("pairing", format!("{a:?} paired with itself")));
            }
            if mate[x] != usize::MAX || mate[y] != usize::MAX {
                return Err(Error::invalid("pairing", "point matched twice"));
            }
            mate[x] = y;
            mate[y] = x;
        }
        if mate.contains(&usize::MAX) {
            return Err(Error::invalid("pairing", "matching is not perfect"));
        }
        let p = Pairing { bottom, top, mate };
        if !p.is_noncrossing() {
            return Err(Error::invalid("pairing", "matching has crossing pairs"));
        }
        Ok(p)
    }

    pub(crate) fn from_mate_unchecked(bottom: usize, top: usize, mate: Vec<usize>) -> Self {
        let p = Pairing { bottom, top, mate };
        debug_assert!(p.is_valid());
        p
    }

    /// The empty diagram `0 → 0`.
    pub fn empty() -> Self {
        Pairing {
            bottom: 0,
            top: 0,
            mate: Vec::new(),
        }
    }

    /// `n` through strands.
    pub fn identity(n: usize) -> Self {
        let mate = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
        Pairing {
            bottom: n,
            top: n,
            mate,
        }
    }

    /// The single cap `2 → 0`.
    pub fn cap() -> Self {
        Pairing {
            bottom: 2,
            top: 0,
            mate: vec![1, 0],
        }
    }

    /// The single cup `0 → 2`.
    pub fn cup() -> Self {
        Pairing {
            bottom: 0,
            top: 2,
            mate: vec![1, 0],
        }
    }

    /// The tangle `points → points − 2` capping `(B_i, B_{i+1})` (1-based)
    /// and passing every other strand straight through.
    pub fn cap_at(points: usize, i: usize) -> Self {
        assert!(points >= 2 && i >= 1 && i < points, "cap out of range");
        let bottom = points;
        let top = points - 2;
        let mut mate = vec![usize::MAX; bottom + top];
        mate[i - 1] = i;
        mate[i] = i - 1;
        let mut t = 0;
        for b in 0..bottom {
            if b == i - 1 || b == i {
                continue;
            }
            mate[b] = bottom + t;
            mate[bottom + t] = b;
            t += 1;
        }
        Pairing { bottom, top, mate }
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom
    }

    pub fn top_count(&self) -> usize {
        self.top
    }

    pub(crate) fn mate(&self) -> &[usize] {
        &self.mate
    }

    /// Partner of a point.
    pub fn partner(&self, p: PairingPoint) -> Option<PairingPoint> {
        let id = match p {
            PairingPoint::Bottom(i) if i >= 1 && i <= self.bottom => i - 1,
            PairingPoint::Top(j) if j >= 1 && j <= self.top => self.bottom + j - 1,
            _ => return None,
        };
        Some(self.label(self.mate[id]))
    }

    fn label(&self, id: usize) -> PairingPoint {
        if id < self.bottom {
            PairingPoint::Bottom(id + 1)
        } else {
            PairingPoint::Top(id - self.bottom + 1)
        }
    }

    /// Point ids in the circular boundary order `B1..Bb, Tt..T1`.
    fn circular_order(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.bottom).collect();
        seq.extend((self.bottom..self.bottom + self.top).rev());
        seq
    }

    fn is_noncrossing(&self) -> bool {
        noncrossing_on(&self.circular_order(), &self.mate)
    }

    /// Checks both invariants: perfect fixed-point-free involution and the
    /// balanced-nesting test on the circular boundary order.
    pub fn is_valid(&self) -> bool {
        let total = self.bottom + self.top;
        if !total.is_multiple_of(2) || self.mate.len() != total {
            return false;
        }
        for (i, &m) in self.mate.iter().enumerate() {
            if m >= total || m == i || self.mate[m] != i {
                return false;
            }
        }
        self.is_noncrossing()
    }

    /// Stacks `upper` on top of `self`, tracing out the glued interface.
    /// Returns the resulting diagram and the number of closed loops removed.
    pub fn compose(&self, upper: &Pairing) -> Result<(Pairing, usize)> {
        if self.top != upper.bottom {
            return Err(Error::SizeMismatch {
                lower: self.top,
                upper: upper.bottom,
            });
        }
        let lower_len = self.bottom + self.top;
        let upper_off = lower_len;
        let mut glue = Gluing::new(lower_len + upper.bottom + upper.top);
        glue.set_mates(0, &self.mate);
        glue.set_mates(upper_off, &upper.mate);
        for j in 0..self.top {
            glue.add_link(self.bottom + j, upper_off + j);
        }
        let boundary: Vec<usize> = (0..self.bottom)
            .chain((0..upper.top).map(|j| upper_off + upper.bottom + j))
            .collect();
        let (mate, loops) = glue.resolve(&boundary);
        Ok((
            Pairing::from_mate_unchecked(self.bottom, upper.top, mate),
            loops,
        ))
    }

    /// Places `right` to the right of `self` (disjoint union, labels of
    /// `right` shifted past `self` on both edges).
    pub fn juxtapose(&self, right: &Pairing) -> Pairing {
        let bottom = self.bottom + right.bottom;
        let top = self.top + right.top;
        let mut mate = vec![usize::MAX; bottom + top];
        let map_left = |id: usize| {
            if id < self.bottom {
                id
            } else {
                bottom + (id - self.bottom)
            }
        };
        let map_right = |id: usize| {
            if id < right.bottom {
                self.bottom + id
            } else {
                bottom + self.top + (id - right.bottom)
            }
        };
        for (i, &m) in self.mate.iter().enumerate() {
            mate[map_left(i)] = map_left(m);
        }
        for (i, &m) in right.mate.iter().enumerate() {
            mate[map_right(i)] = map_right(m);
        }
        Pairing::from_mate_unchecked(bottom, top, mate)
    }

    /// Vertical reflection: swaps the roles of the bottom and top edges,
    /// preserving left-right order.
    pub fn adjoint(&self) -> Pairing {
        let bottom = self.top;
        let top = self.bottom;
        let map = |id: usize| {
            if id < self.bottom {
                bottom + id
            } else {
                id - self.bottom
            }
        };
        let mut mate = vec![usize::MAX; bottom + top];
        for (i, &m) in self.mate.iter().enumerate() {
            mate[map(i)] = map(m);
        }
        Pairing::from_mate_unchecked(bottom, top, mate)
    }

    /// Bottom-bottom pairs as id pairs `(p, q)` with `p < q`.
    fn bottom_turnbacks(&self) -> Vec<(usize, usize)> {
        (0..self.bottom)
            .filter_map(|p| {
                let q = self.mate[p];
                (q < self.bottom && p < q).then_some((p, q))
            })
            .collect()
    }

    pub fn classify(&self) -> DiagramClass {
        let is_epi = (self.bottom..self.bottom + self.top).all(|p| self.mate[p] < self.bottom);
        let is_monic = (0..self.bottom).all(|p| self.mate[p] >= self.bottom);
        let is_non_nested_epi =
            is_epi && self.bottom_turnbacks().iter().all(|&(p, q)| q == p + 1);
        DiagramClass {
            is_epi,
            is_monic,
            is_non_nested_epi,
        }
    }

    /// Counts bottom turn-backs that enclose no other bottom turn-back.
    pub fn innermost_turnbacks(&self) -> usize {
        let tb = self.bottom_turnbacks();
        tb.iter()
            .filter(|&&(p, q)| !tb.iter().any(|&(r, s)| p < r && s < q))
            .count()
    }

    /// Splits the diagram through its narrowest horizontal cut: an epi part
    /// holding every bottom turn-back followed by a monic part holding
    /// every top turn-back. `compose(epi, monic)` recovers the diagram with
    /// no loops.
    pub fn factorize(&self) -> (Pairing, Pairing) {
        let mid = self.bottom - 2 * self.bottom_turnbacks().len();
        let mut epi_mate = vec![usize::MAX; self.bottom + mid];
        let mut monic_mate = vec![usize::MAX; mid + self.top];
        let mut through = 0;
        for p in 0..self.bottom {
            let q = self.mate[p];
            if q < self.bottom {
                epi_mate[p] = q;
                epi_mate[q] = p;
            } else {
                // Through strands preserve left-right order, so the i-th
                // through bottom meets the i-th middle point on both sides.
                epi_mate[p] = self.bottom + through;
                epi_mate[self.bottom + through] = p;
                monic_mate[through] = mid + (q - self.bottom);
                monic_mate[mid + (q - self.bottom)] = through;
                through += 1;
            }
        }
        for t in self.bottom..self.bottom + self.top {
            let q = self.mate[t];
            if q >= self.bottom {
                monic_mate[mid + (t - self.bottom)] = mid + (q - self.bottom);
            }
        }
        (
            Pairing::from_mate_unchecked(self.bottom, mid, epi_mate),
            Pairing::from_mate_unchecked(mid, self.top, monic_mate),
        )
    }

    /// Enumerates every valid pairing `bottom → top` matching the filter,
    /// in lexicographic order on the matching.
    pub fn enumerate(bottom: usize, top: usize, filter: DiagramFilter) -> Result<Vec<Pairing>> {
        let total = bottom + top;
        if !total.is_multiple_of(2) {
            return Err(Error::OddPointCount { bottom, top });
        }
        if total > MAX_ENUM_POINTS {
            return Err(Error::EnumerationLimit {
                points: total,
                limit: MAX_ENUM_POINTS,
            });
        }
        let circ: Vec<usize> = (0..bottom).chain((bottom..total).rev()).collect();
        let mut out: Vec<Pairing> = noncrossing_matchings_on(&circ, total)
            .into_iter()
            .map(|mate| Pairing::from_mate_unchecked(bottom, top, mate))
            .filter(|p| match filter {
                DiagramFilter::All => true,
                DiagramFilter::Epi => p.classify().is_epi,
                DiagramFilter::NonNestedEpi => p.classify().is_non_nested_epi,
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Balanced-nesting test for a matching against a circular point order.
pub(crate) fn noncrossing_on(circ: &[usize], mate: &[usize]) -> bool {
    let mut stack: Vec<usize> = Vec::with_capacity(circ.len() / 2);
    let mut seen = vec![false; mate.len()];
    for &p in circ {
        if seen[mate[p]] {
            if stack.last() == Some(&mate[p]) {
                stack.pop();
            } else {
                return false;
            }
        } else {
            seen[p] = true;
            stack.push(p);
        }
    }
    stack.is_empty()
}

/// All noncrossing perfect matchings of the points listed in circular
/// order `circ`; returns partner vectors indexed by point id.
pub(crate) fn noncrossing_matchings_on(circ: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(seq: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if seq.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for j in (1..seq.len()).step_by(2) {
            let inner = rec(&seq[1..j]);
            let outer = rec(&seq[j + 1..]);
            for inn in &inner {
                for o in &outer {
                    let mut m = Vec::with_capacity(seq.len() / 2);
                    m.push((seq[0], seq[j]));
                    m.extend_from_slice(inn);
                    m.extend_from_slice(o);
                    out.push(m);
                }
            }
        }
        out
    }
    rec(circ)
        .into_iter()
        .map(|pairs| {
            let mut mate = vec![usize::MAX; total];
            for (a, b) in pairs {
                mate[a] = b;
                mate[b] = a;
            }
            mate
        })
        .collect()
}

/// The `n`-th Catalan number.
pub fn catalan(n: usize) -> usize {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c as usize
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pairs: Vec<(PairingPoint, PairingPoint)> = (0..self.mate.len())
            .filter(|&i| i < self.mate[i])
            .map(|i| (self.label(i), self.label(self.mate[i])))
            .collect();
        pairs.sort();
        write!(f, "{}→{}:{{", self.bottom, self.top)?;
        for (i, (a, b)) in pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", point_label(*a), point_label(*b))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pairing({self})")
    }
}

fn point_label(p: PairingPoint) -> String {
    match p {
        PairingPoint::Bottom(i) => format!("B{i}"),
        PairingPoint::Top(j) => format!("T{j}"),
    }
}

pub(crate) fn parse_point(text: &str) -> Result<PairingPoint> {
    let text = text.trim();
    let (kind, idx) = text.split_at(1);
    let i: usize = idx
        .parse()
        .map_err(|e| Error::parse(format!("bad point '{text}': {e}")))?;
    match kind {
        "B" => Ok(PairingPoint::Bottom(i)),
        "T" => Ok(PairingPoint::Top(i)),
        _ => Err(Error::parse(format!("bad point '{text}'"))),
    }
}

/// Splits `"(A,B),(C,D),…"` into endpoint label pairs.
pub(crate) fn parse_pair_list(text: &str) -> Result<Vec<(String, String)>> {
    let inner = text.trim();
    let mut pairs = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let rest2 = rest.trim_start_matches(',').trim();
        if rest2.is_empty() {
            break;
        }
        let open = rest2
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(format!("expected '(' in '{rest2}'")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::parse("unclosed pair"))?;
        let body = &open[..close];
        let (a, b) = body
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("expected ',' in pair '{body}'")))?;
        pairs.push((a.trim().to_string(), b.trim().to_string()));
        rest = &open[close + 1..];
    }
    Ok(pairs)
}

impl FromStr for Pairing {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| Error::parse("expected 'b→t:{pairs}'"))?;
        let (b, t) = head
            .split_once('→')
            .or_else(|| head.split_once("->"))
            .ok_or_else(|| Error::parse("expected 'b→t' header"))?;
        let bottom: usize = b
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad bottom count: {e}")))?;
        let top: usize = t
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad top count: {e}")))?;
        let body = body
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::parse("expected '{pairs}' body"))?;
        let mut pairs = Vec::new();
        for (a, b) in parse_pair_list(body)? {
            pairs.push((parse_point(&a)?, parse_point(&b)?));
        }
        Pairing::new(bottom, top, &pairs)
    }
}
