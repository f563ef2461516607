//! Permutation groups given by generators.
//!
//! Points are `0..degree`. A [`Permutation`] stores its image array, and the
//! product `p.compose(&q)` is the function composition `p ∘ q`, so groups act
//! on the left: `(p ∘ q)·x = p·(q·x)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on explicit element enumeration.
pub const DEFAULT_ELEMENT_LIMIT: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from its image array, checking that it is a bijection.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n || seen[im] {
                return Err(Error::input(format!(
                    "image array {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[im] = true;
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"`. Whitespace and commas
    /// separate points; `"()"` or the empty string is the identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::input(format!("malformed cycle notation: {text:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::input(format!("unclosed cycle in {text:?}")))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let pt: usize = tok
                    .parse()
                    .map_err(|_| Error::input(format!("bad point {tok:?} in {text:?}")))?;
                if pt >= degree {
                    return Err(Error::input(format!(
                        "point {pt} out of range for degree {degree}"
                    )));
                }
                if used[pt] {
                    return Err(Error::input(format!(
                        "point {pt} repeated in cycle notation {text:?}"
                    )));
                }
                used[pt] = true;
                cycle.push(pt);
            }
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(k + 1) % cycle.len()] as u32;
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &im)| i as u32 == im)
    }

    /// Cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    transversal_inv: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut lv = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            transversal_inv: vec![None; degree],
        };
        lv.rebuild(degree);
        lv
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal_inv = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.transversal_inv[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    let u = s.compose(self.transversal[beta].as_ref().unwrap());
                    self.transversal_inv[gamma] = Some(u.inverse());
                    self.transversal[gamma] = Some(u);
                    self.orbit.push(gamma);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set, built by the deterministic Schreier–Sims
/// algorithm. Level `i` holds the generators fixing the first `i` base points.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Builds a chain whose base starts with `prefix`.
    pub fn new(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut levels: Vec<Level> = prefix.iter().map(|&b| Level::new(b, degree)).collect();
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in &gens {
            if levels.iter().all(|lv| g.apply(lv.base) == lv.base) {
                let moved = (0..degree).find(|&x| g.apply(x) != x).unwrap();
                levels.push(Level::new(moved, degree));
            }
        }
        let bases: Vec<usize> = levels.iter().map(|lv| lv.base).collect();
        for (i, lv) in levels.iter_mut().enumerate() {
            lv.gens = gens
                .iter()
                .filter(|g| bases[..i].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            lv.rebuild(degree);
        }
        let mut chain = StabilizerChain { degree, levels };
        chain.complete();
        chain
    }

    fn strip(&self, from: usize, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for j in from..self.levels.len() {
            let lv = &self.levels[j];
            let beta = h.apply(lv.base);
            match &lv.transversal_inv[beta] {
                None => return (h, j),
                Some(uinv) => h = uinv.compose(&h),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let degree = self.degree;
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &beta in &orbit {
                for s in &gens {
                    let gamma = s.apply(beta);
                    let lv = &self.levels[lvl];
                    let su = s.compose(lv.transversal[beta].as_ref().unwrap());
                    if Some(&su) == lv.transversal[gamma].as_ref() {
                        continue;
                    }
                    let schreier = lv.transversal_inv[gamma].as_ref().unwrap().compose(&su);
                    let (residue, j) = self.strip(lvl + 1, &schreier);
                    if j < self.levels.len() || !residue.is_identity() {
                        if j == self.levels.len() {
                            let moved = (0..degree).find(|&x| residue.apply(x) != x).unwrap();
                            self.levels.push(Level::new(moved, degree));
                        }
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(residue.clone());
                            self.levels[l].rebuild(degree);
                        }
                        i = j + 1;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.base).collect()
    }

    /// Fundamental orbit sizes along the chain.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, lv| {
            acc * BigUint::from(lv.orbit.len())
        })
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (h, j) = self.strip(0, g);
            j == self.levels.len() && h.is_identity()
        }
    }

    /// All strong generators (the generators of level 0).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|lv| lv.gens.as_slice())
            .unwrap_or(&[])
    }

    /// Transversal element mapping the first base point to `point`, if `point`
    /// lies in the first fundamental orbit.
    pub fn transversal(&self, point: usize) -> Option<&Permutation> {
        self.levels
            .first()
            .and_then(|lv| lv.transversal[point].as_ref())
    }

    fn tail(&self) -> StabilizerChain {
        StabilizerChain {
            degree: self.degree,
            levels: self.levels[1..].to_vec(),
        }
    }
}

/// A finitely generated permutation group on `0..degree`.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::input(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
        Ok(Self {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    /// Parses generators written in cycle notation.
    pub fn from_cycle_strings<S: AsRef<str>>(degree: usize, gens: &[S]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::from_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::new(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images.clone()).collect(),
        }
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let gens = spec
            .generators
            .iter()
            .map(|imgs| {
                if imgs.len() != spec.degree {
                    return Err(Error::input(format!(
                        "generator of length {} in a group of degree {}",
                        imgs.len(),
                        spec.degree
                    )));
                }
                Permutation::new(imgs.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec.degree, gens)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }
}

/// Group input file format: `{"degree": n, "generators": [[images...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionLabel {
    Natural,
    OrderedPairs,
    Regular,
    Explicit,
}

/// A permutation group together with the set it acts on.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub group: PermutationGroup,
    pub point_count: usize,
    pub label: ActionLabel,
    pub point_names: Option<Vec<String>>,
}

impl GroupAction {
    pub fn new(group: PermutationGroup, label: ActionLabel) -> Self {
        let point_count = group.degree();
        Self {
            group,
            point_count,
            label,
            point_names: None,
        }
    }

    pub fn natural(group: PermutationGroup) -> Self {
        Self::new(group, ActionLabel::Natural)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.point_count);
        self.point_names = Some(names);
        self
    }
}

/// Smallest generator-closed set containing `point`.
pub fn orbit(group: &PermutationGroup, point: usize) -> Result<BTreeSet<usize>> {
    if point >= group.degree() {
        return Err(Error::input(format!(
            "point {point} out of range for degree {}",
            group.degree()
        )));
    }
    Ok(orbit_of(group.generators(), group.degree(), point)
        .into_iter()
        .collect())
}

pub(crate) fn orbit_of(gens: &[Permutation], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut out = vec![point];
    let mut k = 0;
    while k < out.len() {
        let x = out[k];
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        k += 1;
    }
    out
}

/// Orbit partition of `0..degree`, each orbit sorted, orbits ordered by least point.
pub(crate) fn orbits(gens: &[Permutation], degree: usize) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let mut orb = orbit_of(gens, degree, start);
        for &x in &orb {
            label[x] = out.len();
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

pub fn is_transitive(action: &GroupAction) -> bool {
    action.point_count == 0
        || orbit_of(action.group.generators(), action.point_count, 0).len() == action.point_count
}

pub fn group_order(group: &PermutationGroup) -> BigUint {
    group.order()
}

/// Generators of the stabilizer of `point`, as a group with a precomputed chain.
pub fn point_stabilizer(group: &PermutationGroup, point: usize) -> Result<PermutationGroup> {
    if point >= group.degree() {
        return Err(Error::input(format!(
            "point {point} out of range for degree {}",
            group.degree()
        )));
    }
    let chain = StabilizerChain::new(group.degree(), group.generators(), &[point]);
    let gens = if chain.levels.len() > 1 {
        chain.levels[1].gens.clone()
    } else {
        Vec::new()
    };
    let stab = PermutationGroup::new(group.degree(), gens)?;
    let tail = if chain.levels.len() > 1 {
        chain.tail()
    } else {
        StabilizerChain {
            degree: group.degree(),
            levels: Vec::new(),
        }
    };
    let _ = stab.chain.set(tail);
    Ok(stab)
}

/// Index of the ordered pair `(i, j)`, `i != j`, in lexicographic order.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i != j);
    i * (n - 1) + if j < i { j } else { j - 1 }
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(n: usize, k: usize) -> (usize, usize) {
    let i = k / (n - 1);
    let r = k % (n - 1);
    (i, if r < i { r } else { r + 1 })
}

/// Coordinate-wise action on ordered pairs of distinct points.
pub fn induced_pair_action(action: &GroupAction) -> Result<GroupAction> {
    let n = action.point_count;
    if n < 2 {
        return Err(Error::input("pair action needs at least two points"));
    }
    let m = n * (n - 1);
    let gens = action
        .group
        .generators()
        .iter()
        .map(|g| {
            let mut images = vec![0u32; m];
            for (k, slot) in images.iter_mut().enumerate() {
                let (i, j) = pair_from_index(n, k);
                *slot = pair_index(n, g.apply(i), g.apply(j)) as u32;
            }
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let group = PermutationGroup::new(m, gens)?;
    let names = (0..m)
        .map(|k| {
            let (i, j) = pair_from_index(n, k);
            match &action.point_names {
                Some(nm) => format!("({},{})", nm[i], nm[j]),
                None => format!("({i},{j})"),
            }
        })
        .collect();
    Ok(GroupAction::new(group, ActionLabel::OrderedPairs).with_names(names))
}

/// All group elements in breadth-first order from the identity, each layer
/// sorted lexicographically by image array.
pub fn enumerate_elements(
    group: &PermutationGroup,
    element_limit: usize,
) -> Result<Vec<Permutation>> {
    let order = group.order();
    if order > BigUint::from(element_limit) {
        return Err(Error::resource(format!(
            "group of order {order} exceeds element limit {element_limit}"
        )));
    }
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(group.degree());
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut layer = vec![id];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for e in &layer {
            for s in group.generators() {
                let p = s.compose(e);
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

/// Left-translation action of the group on its own elements.
pub fn regular_action(group: &PermutationGroup, element_limit: usize) -> Result<GroupAction> {
    let elements = enumerate_elements(group, element_limit)?;
    regular_action_on(group, &elements)
}

pub(crate) fn regular_action_on(
    group: &PermutationGroup,
    elements: &[Permutation],
) -> Result<GroupAction> {
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let m = elements.len();
    let gens = group
        .generators()
        .iter()
        .map(|s| {
            let images = elements
                .iter()
                .map(|e| index[&s.compose(e)] as u32)
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let names = elements.iter().map(|e| e.to_string()).collect();
    Ok(GroupAction::new(PermutationGroup::new(m, gens)?, ActionLabel::Regular).with_names(names))
}
