//! Finite inverse systems `G_1 ← G_2 ← … ← G_d` standing in for profinite
//! groups, and coherent subgroup sequences standing in for closed
//! subgroups. Every statement about the limit is certified only to depth `d`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{gcd, prime_divisors};
use crate::classify::is_cyclic;
use crate::construct::{cyclic, direct_product, semidirect_cyclic};
use crate::error::{domain, Error, Result};
use crate::format::{parse_generator_list, parse_group_record};
use crate::group::{FiniteGroup, Limits};
use crate::hom::Homomorphism;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;
use crate::subgroups::enumerate_subgroups;

/// Which side of the width dichotomy the limit group is known to lie on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WidthClass {
    /// `K ⋉ T` with `K ≅ Z_p` and `T` a finite `p'`-group.
    ProcyclicByFinite {
        p: usize,
    },
    /// The limit is finite.
    Finite,
    Other,
}

impl WidthClass {
    pub fn has_finite_width(&self) -> bool {
        !matches!(self, WidthClass::Other)
    }
}

pub struct Tower {
    name: String,
    levels: Vec<Arc<FiniteGroup>>,
    /// `maps[k]: levels[k + 1] → levels[k]`.
    maps: Vec<Homomorphism>,
    width_class: WidthClass,
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let orders: Vec<usize> = self.levels.iter().map(|g| g.order()).collect();
        f.debug_struct("Tower")
            .field("name", &self.name)
            .field("orders", &orders)
            .field("width_class", &self.width_class)
            .finish()
    }
}

impl Tower {
    pub fn new(
        name: impl Into<String>,
        levels: Vec<Arc<FiniteGroup>>,
        maps: Vec<Homomorphism>,
        width_class: WidthClass,
    ) -> Result<Arc<Tower>> {
        let name = name.into();
        if levels.is_empty() {
            return Err(Error::Construction(format!("tower {name} has no levels")));
        }
        if maps.len() + 1 != levels.len() {
            return Err(Error::Construction(format!(
                "tower {name}: {} levels need {} maps, got {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            )));
        }
        for (k, f) in maps.iter().enumerate() {
            if !Arc::ptr_eq(f.source(), &levels[k + 1]) || !Arc::ptr_eq(f.target(), &levels[k]) {
                return Err(Error::Construction(format!(
                    "tower {name}: map {} does not go from level {} to level {}",
                    k + 2,
                    k + 2,
                    k + 1
                )));
            }
            if !f.is_surjective() {
                return Err(Error::Construction(format!(
                    "tower {name}: map from level {} to level {} is not surjective",
                    k + 2,
                    k + 1
                )));
            }
        }
        Ok(Arc::new(Tower {
            name,
            levels,
            maps,
            width_class,
        }))
    }

    /// Levels whose generators correspond one-to-one, each generator of
    /// `G_{k+1}` mapping to the same-position generator of `G_k`.
    pub fn aligned(
        name: impl Into<String>,
        levels: Vec<Arc<FiniteGroup>>,
        width_class: WidthClass,
    ) -> Result<Arc<Tower>> {
        let maps = levels
            .windows(2)
            .map(|w| Homomorphism::from_indices(&w[1], &w[0], w[0].generator_indices().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Tower::new(name, levels, maps, width_class)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Level `k`, 1-based.
    pub fn level(&self, k: usize) -> &Arc<FiniteGroup> {
        &self.levels[k - 1]
    }

    pub fn levels(&self) -> &[Arc<FiniteGroup>] {
        &self.levels
    }

    /// The map `G_{k+1} → G_k`, for `1 ≤ k < depth`.
    pub fn map_down(&self, k: usize) -> &Homomorphism {
        &self.maps[k - 1]
    }

    pub fn width_class(&self) -> WidthClass {
        self.width_class
    }

    /// The first `d` levels.
    pub fn truncate(self: &Arc<Self>, d: usize) -> Result<Arc<Tower>> {
        if d == 0 || d > self.depth() {
            return domain(format!("depth {d} outside 1..={}", self.depth()));
        }
        if d == self.depth() {
            return Ok(self.clone());
        }
        Tower::new(
            self.name.clone(),
            self.levels[..d].to_vec(),
            self.maps[..d - 1].to_vec(),
            self.width_class,
        )
    }

    /// The description read back by [`parse_tower`].
    pub fn to_text(&self) -> String {
        let class = match self.width_class {
            WidthClass::ProcyclicByFinite { p } => format!("zp-by-finite {p}"),
            WidthClass::Finite => "finite".into(),
            WidthClass::Other => "other".into(),
        };
        let mut out = format!(
            "tower {}; depth {}; class {class}\n",
            self.name,
            self.depth()
        );
        for (k, g) in self.levels.iter().enumerate() {
            out.push_str(&format!("level {}; {}\n", k + 1, g.to_record()));
            if k > 0 {
                let f = &self.maps[k - 1];
                let images: Vec<String> = f
                    .generator_images()
                    .iter()
                    .map(|&x| f.target().element(x).to_string())
                    .collect();
                out.push_str(&format!("map {}; images {}\n", k + 1, images.join("; ")));
            }
        }
        out
    }

    pub fn is_procyclic(&self) -> bool {
        self.levels.iter().all(|g| is_cyclic(g))
    }

    /// Primes dividing some level order.
    pub fn pi_star(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .levels
            .iter()
            .flat_map(|g| prime_divisors(g.order()))
            .collect();
        set.into_iter().collect()
    }

    /// Every coherent subgroup, one per subgroup of the top level.
    pub fn coherent_subgroups(self: &Arc<Self>, limits: &Limits) -> Result<Vec<CoherentSubgroup>> {
        let top = enumerate_subgroups(self.levels.last().expect("d ≥ 1"), limits)?;
        top.subgroups()
            .iter()
            .map(|h| CoherentSubgroup::from_top(self, h.clone()))
            .collect()
    }

    /// Width, distributivity, modularity or decomposability of each
    /// `L(G_k)`. Levels beyond the order bound end the report early.
    pub fn level_lattice_trajectory(
        &self,
        predicate: LevelPredicate,
        limits: &Limits,
    ) -> TrajectoryReport {
        let mut values = Vec::new();
        let mut truncated_at = None;
        for (k, g) in self.levels.iter().enumerate() {
            let view = match enumerate_subgroups(g, limits) {
                Ok(v) => v,
                Err(Error::Resource { .. }) => {
                    truncated_at = Some(k + 1);
                    break;
                }
                Err(e) => unreachable!("enumeration only fails on bounds: {e}"),
            };
            let l = view.lattice();
            values.push(match predicate {
                LevelPredicate::Width => LevelValue::Width(l.width().0),
                LevelPredicate::Distributive => LevelValue::Flag(l.is_distributive()),
                LevelPredicate::Modular => LevelValue::Flag(l.is_modular()),
                LevelPredicate::Decomposable => LevelValue::Flag(l.is_directly_decomposable()),
            });
        }
        let verdict = if truncated_at.is_some() {
            Verdict::Inconclusive
        } else {
            Verdict::of(&values)
        };
        TrajectoryReport {
            tower: self.name.clone(),
            predicate,
            depth: self.depth(),
            values,
            verdict,
            truncated_at,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelPredicate {
    Width,
    Distributive,
    Modular,
    Decomposable,
}

impl std::str::FromStr for LevelPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "width" => Ok(LevelPredicate::Width),
            "distributive" => Ok(LevelPredicate::Distributive),
            "modular" => Ok(LevelPredicate::Modular),
            "decomposable" => Ok(LevelPredicate::Decomposable),
            _ => domain(format!("unknown level predicate {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum LevelValue {
    Width(usize),
    Flag(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stabilized,
    MonotoneUnbounded,
    Inconclusive,
}

impl Verdict {
    /// Stabilized when the last `⌈d/2⌉` values agree; a width sequence that
    /// never decreases and still grows at the last level is
    /// monotone-unbounded.
    fn of(values: &[LevelValue]) -> Verdict {
        let d = values.len();
        if d == 0 {
            return Verdict::Inconclusive;
        }
        let tail = &values[d - d.div_ceil(2)..];
        if tail.iter().all(|v| *v == tail[0]) {
            return Verdict::Stabilized;
        }
        let widths: Option<Vec<usize>> = values
            .iter()
            .map(|v| match v {
                LevelValue::Width(w) => Some(*w),
                LevelValue::Flag(_) => None,
            })
            .collect();
        match widths {
            Some(w) if w.windows(2).all(|p| p[0] <= p[1]) && w[d - 2] < w[d - 1] => {
                Verdict::MonotoneUnbounded
            }
            _ => Verdict::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryReport {
    pub tower: String,
    pub predicate: LevelPredicate,
    pub depth: usize,
    pub values: Vec<LevelValue>,
    pub verdict: Verdict,
    /// First level whose lattice exceeded the bound, if any.
    pub truncated_at: Option<usize>,
}

impl TrajectoryReport {
    pub fn widths(&self) -> Vec<usize> {
        self.values
            .iter()
            .filter_map(|v| match v {
                LevelValue::Width(w) => Some(*w),
                LevelValue::Flag(_) => None,
            })
            .collect()
    }

    pub fn flags(&self) -> Vec<bool> {
        self.values
            .iter()
            .filter_map(|v| match v {
                LevelValue::Flag(b) => Some(*b),
                LevelValue::Width(_) => None,
            })
            .collect()
    }
}

impl std::fmt::Display for TrajectoryReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self
            .values
            .iter()
            .map(|v| match v {
                LevelValue::Width(w) => w.to_string(),
                LevelValue::Flag(b) => b.to_string(),
            })
            .collect();
        let verdict = match self.verdict {
            Verdict::Stabilized => "stabilized",
            Verdict::MonotoneUnbounded => "monotone-unbounded",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "[{}] {verdict}", vals.join(","))?;
        if let Some(k) = self.truncated_at {
            write!(f, " (truncated at level {k})")?;
        }
        Ok(())
    }
}

/// `H_k ≤ G_k` with each connecting map sending `H_{k+1}` onto `H_k`.
#[derive(Debug, Clone)]
pub struct CoherentSubgroup {
    tower: Arc<Tower>,
    levels: Vec<Subgroup>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OpenReport {
    pub open: bool,
    /// `|G_d : H_d|`.
    pub index: usize,
    /// First level from which the index is constant up to depth `d`.
    pub stable_from: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PermutabilityReport {
    pub permutable: bool,
    /// First level where `H_k K_k ≠ K_k H_k`.
    pub failing_level: Option<usize>,
    pub depth: usize,
}

impl CoherentSubgroup {
    pub fn new(tower: &Arc<Tower>, levels: Vec<Subgroup>) -> Result<Self> {
        if levels.len() != tower.depth() {
            return domain(format!(
                "{} subgroups for a tower of depth {}",
                levels.len(),
                tower.depth()
            ));
        }
        for (k, h) in levels.iter().enumerate() {
            if !Arc::ptr_eq(h.group(), &tower.levels[k]) {
                return domain(format!("subgroup {} is not in level {}", k + 1, k + 1));
            }
        }
        for k in 0..levels.len() - 1 {
            if tower.maps[k].image(&levels[k + 1])? != levels[k] {
                return Err(Error::Construction(format!(
                    "level {} does not map onto level {}",
                    k + 2,
                    k + 1
                )));
            }
        }
        Ok(CoherentSubgroup {
            tower: tower.clone(),
            levels,
        })
    }

    /// The sequence of images of a top-level subgroup.
    pub fn from_top(tower: &Arc<Tower>, top: Subgroup) -> Result<Self> {
        if !Arc::ptr_eq(top.group(), tower.levels.last().expect("d ≥ 1")) {
            return domain("subgroup is not in the top level");
        }
        let mut levels = vec![top];
        for f in tower.maps.iter().rev() {
            let next = f.image(levels.last().expect("non-empty"))?;
            levels.push(next);
        }
        levels.reverse();
        Ok(CoherentSubgroup {
            tower: tower.clone(),
            levels,
        })
    }

    pub fn whole(tower: &Arc<Tower>) -> Self {
        CoherentSubgroup {
            tower: tower.clone(),
            levels: tower.levels.iter().map(Subgroup::whole).collect(),
        }
    }

    pub fn trivial(tower: &Arc<Tower>) -> Self {
        CoherentSubgroup {
            tower: tower.clone(),
            levels: tower.levels.iter().map(Subgroup::trivial).collect(),
        }
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    /// `H_k`, 1-based.
    pub fn level(&self, k: usize) -> &Subgroup {
        &self.levels[k - 1]
    }

    pub fn indices(&self) -> Vec<usize> {
        self.levels.iter().map(|h| h.index()).collect()
    }

    /// Open to depth `d`: the index no longer grows at the last level. A
    /// depth-1 tower has no growth to observe and every subgroup counts as
    /// open there.
    pub fn is_open(&self) -> OpenReport {
        let idx = self.indices();
        let d = idx.len();
        let last = idx[d - 1];
        let stable_from = idx.iter().rposition(|&i| i != last).map_or(1, |k| k + 2);
        OpenReport {
            open: d == 1 || idx[d - 2] == last,
            index: last,
            stable_from,
            depth: d,
        }
    }

    /// `H_k K_k = K_k H_k` at every level, which certifies `HK = KH` in the
    /// limit to depth `d`.
    pub fn permutable_in_limit(&self, other: &CoherentSubgroup) -> Result<PermutabilityReport> {
        if !Arc::ptr_eq(&self.tower, &other.tower) {
            return domain(format!(
                "coherent subgroups of different towers ({} and {})",
                self.tower.name, other.tower.name
            ));
        }
        for (k, (h, kk)) in self.levels.iter().zip(&other.levels).enumerate() {
            if !permute_by_order(h, kk)? {
                return Ok(PermutabilityReport {
                    permutable: false,
                    failing_level: Some(k + 1),
                    depth: self.levels.len(),
                });
            }
        }
        Ok(PermutabilityReport {
            permutable: true,
            failing_level: None,
            depth: self.levels.len(),
        })
    }
}

/// `HK` is a subgroup exactly when `|⟨H, K⟩| · |H ∩ K| = |H| · |K|`.
fn permute_by_order(h: &Subgroup, k: &Subgroup) -> Result<bool> {
    let join = h.join(k)?;
    let meet = h.intersection(k)?;
    Ok(join.order() * meet.order() == h.order() * k.order())
}

fn depth_range(d: usize) -> Result<()> {
    if d == 0 {
        return domain("tower depth must be at least 1");
    }
    Ok(())
}

/// `C_p ← C_{p²} ← … ← C_{p^d}`, truncations of `Z_p`.
pub fn zp_tower(p: usize, d: usize, limits: &Limits) -> Result<Arc<Tower>> {
    if !crate::arith::is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    cyclic_levels(
        &format!("Z{p}"),
        p,
        d,
        WidthClass::ProcyclicByFinite { p },
        limits,
    )
}

/// Levels `C_{n^k}`.
pub fn cyclic_tower(n: usize, d: usize, limits: &Limits) -> Result<Arc<Tower>> {
    let class = match crate::arith::prime_power_base(n) {
        Some(p) => WidthClass::ProcyclicByFinite { p },
        None => WidthClass::Other,
    };
    cyclic_levels(&format!("C{n}^k"), n, d, class, limits)
}

fn cyclic_levels(
    name: &str,
    n: usize,
    d: usize,
    class: WidthClass,
    limits: &Limits,
) -> Result<Arc<Tower>> {
    depth_range(d)?;
    if n < 2 {
        return domain("cyclic tower base must be at least 2");
    }
    let levels = (1..=d as u32)
        .map(|k| {
            let order = n.checked_pow(k).ok_or(Error::Resource {
                what: "group order",
                bound: limits.max_order,
                actual: usize::MAX,
            })?;
            cyclic(order, limits)
        })
        .collect::<Result<Vec<_>>>()?;
    Tower::aligned(name, levels, class)
}

/// Levels `C_{p^k} ⋉ T` with `T = C_{t_1} × …` and the generator of
/// `C_{p^k}` acting by `a ↦ a^e` at every level.
pub fn semidirect_tower(
    p: usize,
    d: usize,
    t_orders: &[usize],
    e: usize,
    limits: &Limits,
) -> Result<Arc<Tower>> {
    depth_range(d)?;
    if !crate::arith::is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let t_size: usize = t_orders.iter().product();
    let class = if gcd(t_size, p) == 1 {
        WidthClass::ProcyclicByFinite { p }
    } else {
        WidthClass::Other
    };
    let levels = (1..=d as u32)
        .map(|k| semidirect_cyclic(p.pow(k), t_orders, e, limits))
        .collect::<Result<Vec<_>>>()?;
    let t_name: Vec<String> = t_orders.iter().map(|n| format!("C{n}")).collect();
    Tower::aligned(format!("Z{p}:{}[{e}]", t_name.join("x")), levels, class)
}

/// Levels `C_q ⋉ C_{p^k}` with `C_q` acting by `a ↦ a^{-1}`.
pub fn inversion_tower(q: usize, p: usize, d: usize, limits: &Limits) -> Result<Arc<Tower>> {
    depth_range(d)?;
    let levels = (1..=d as u32)
        .map(|k| {
            let m = p.pow(k);
            semidirect_cyclic(q, &[m], m - 1, limits)
        })
        .collect::<Result<Vec<_>>>()?;
    Tower::aligned(format!("C{q}:Z{p}[-1]"), levels, WidthClass::Other)
}

/// Levels `C_{p^m} ⋉ C_{p^m}`, `m = 1..d`, with `a^x = a^{1+p^k}`.
pub fn type_iv_tower(p: usize, k: u32, d: usize, limits: &Limits) -> Result<Arc<Tower>> {
    depth_range(d)?;
    if !crate::arith::is_prime(p) || k == 0 || (p == 2 && k < 2) {
        return domain(format!("no Iwasawa action 1+{p}^{k}"));
    }
    let levels = (1..=d as u32)
        .map(|m| {
            let n = p.pow(m);
            semidirect_cyclic(n, &[n], (1 + p.pow(k)) % n, limits)
        })
        .collect::<Result<Vec<_>>>()?;
    Tower::aligned(format!("Z{p}:Z{p}[1+{p}^{k}]"), levels, WidthClass::Other)
}

/// Every level is `G`, every map the identity.
pub fn constant_tower(g: &Arc<FiniteGroup>, d: usize) -> Result<Arc<Tower>> {
    depth_range(d)?;
    Tower::aligned(g.name().to_string(), vec![g.clone(); d], WidthClass::Finite)
}

/// Levelwise direct products with componentwise maps.
pub fn product_tower(a: &Tower, b: &Tower, limits: &Limits) -> Result<Arc<Tower>> {
    if a.depth() != b.depth() {
        return domain(format!(
            "towers of different depths ({} and {})",
            a.depth(),
            b.depth()
        ));
    }
    let levels = a
        .levels
        .iter()
        .zip(&b.levels)
        .map(|(x, y)| direct_product(x, y, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::new();
    for k in 0..a.depth() - 1 {
        let (fa, fb) = (&a.maps[k], &b.maps[k]);
        let (ta, tb) = (&a.levels[k], &b.levels[k]);
        let ida = Permutation::identity(ta.degree());
        let idb = Permutation::identity(tb.degree());
        let images: Vec<Permutation> = fa
            .generator_images()
            .iter()
            .map(|&x| ta.element(x).direct_sum(&idb))
            .chain(
                fb.generator_images()
                    .iter()
                    .map(|&y| ida.direct_sum(tb.element(y))),
            )
            .collect();
        maps.push(Homomorphism::new(&levels[k + 1], &levels[k], &images)?);
    }
    let class = match (a.width_class, b.width_class) {
        (WidthClass::Finite, WidthClass::Finite) => WidthClass::Finite,
        (WidthClass::ProcyclicByFinite { p }, WidthClass::Finite) if coprime_to(b, p) => {
            WidthClass::ProcyclicByFinite { p }
        }
        (WidthClass::Finite, WidthClass::ProcyclicByFinite { p }) if coprime_to(a, p) => {
            WidthClass::ProcyclicByFinite { p }
        }
        _ => WidthClass::Other,
    };
    Tower::new(format!("{}x{}", a.name, b.name), levels, maps, class)
}

fn coprime_to(t: &Tower, p: usize) -> bool {
    !t.pi_star().contains(&p)
}

/// Reads a tower description:
///
/// ```text
/// tower NAME; depth D [; class finite | other | zp-by-finite P]
/// level K; name X; degree N; gens (..); (..)
/// map K; images (..); (..)
/// ```
///
/// `map K` lists the images in level `K − 1` of the generators of level
/// `K`. Points are 1-based; `#` starts a comment.
pub fn parse_tower(text: &str, limits: &Limits) -> Result<Arc<Tower>> {
    let mut header: Option<(String, usize, WidthClass)> = None;
    let mut levels: Vec<Option<(Arc<FiniteGroup>, usize)>> = Vec::new();
    let mut images: Vec<Option<(Vec<Permutation>, usize)>> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(';')
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .collect();
        let (head, rest) = fields[0].split_once(' ').unwrap_or((fields[0], ""));
        match head {
            "tower" => {
                if header.is_some() {
                    return Err(err("duplicate tower header".into()));
                }
                let mut depth = None;
                let mut class = WidthClass::Other;
                for f in &fields[1..] {
                    let toks: Vec<&str> = f.split_whitespace().collect();
                    match toks.as_slice() {
                        ["depth", d] => {
                            depth = Some(d.parse::<usize>().ok().filter(|&d| d > 0).ok_or_else(
                                || err(format!("depth must be a positive integer, got {d:?}")),
                            )?)
                        }
                        ["class", "finite"] => class = WidthClass::Finite,
                        ["class", "other"] => class = WidthClass::Other,
                        ["class", "zp-by-finite", p] => {
                            let p = p
                                .parse::<usize>()
                                .ok()
                                .filter(|&p| crate::arith::is_prime(p))
                                .ok_or_else(|| err(format!("{p:?} is not a prime")))?;
                            class = WidthClass::ProcyclicByFinite { p };
                        }
                        _ => return Err(err(format!("unrecognized tower field {f:?}"))),
                    }
                }
                let depth = depth.ok_or_else(|| err("tower header lacks a depth".into()))?;
                let name = rest.trim();
                if name.is_empty() {
                    return Err(err("tower header lacks a name".into()));
                }
                levels = vec![None; depth];
                images = vec![None; depth];
                header = Some((name.to_string(), depth, class));
            }
            "level" | "map" => {
                let Some((_, depth, _)) = header else {
                    return Err(err(format!("{head} line before the tower header")));
                };
                let k: usize = rest
                    .trim()
                    .parse()
                    .ok()
                    .filter(|k| (1..=depth).contains(k))
                    .ok_or_else(|| err(format!("level number must lie in 1..={depth}")))?;
                if head == "level" {
                    if levels[k - 1].is_some() {
                        return Err(err(format!("level {k} given twice")));
                    }
                    let record = fields[1..].join("; ");
                    let (name, degree, gens) = parse_group_record(&record).map_err(&err)?;
                    let g = FiniteGroup::generate(name, degree, gens, limits)
                        .map_err(|e| err(e.to_string()))?;
                    levels[k - 1] = Some((g, line_no));
                } else {
                    if k == 1 {
                        return Err(err("level 1 has no map below it".into()));
                    }
                    if images[k - 1].is_some() {
                        return Err(err(format!("map {k} given twice")));
                    }
                    let first = fields
                        .get(1)
                        .and_then(|f| f.strip_prefix("images"))
                        .ok_or_else(|| err("expected `images` after the map number".into()))?;
                    let mut parts = vec![first.trim()];
                    parts.extend(fields.iter().skip(2).copied());
                    let target_degree = levels[k - 2]
                        .as_ref()
                        .map(|(g, _)| g.degree())
                        .ok_or_else(|| err(format!("map {k} precedes level {}", k - 1)))?;
                    let perms = parse_generator_list(target_degree, &parts).map_err(&err)?;
                    images[k - 1] = Some((perms, line_no));
                }
            }
            _ => return Err(err(format!("unrecognized line {line:?}"))),
        }
    }
    let (name, depth, class) = header.ok_or(Error::Parse {
        line: last_line.max(1),
        msg: "missing tower header".into(),
    })?;
    let mut groups = Vec::new();
    for (k, lv) in levels.into_iter().enumerate() {
        let (g, _) = lv.ok_or(Error::Parse {
            line: last_line.max(1),
            msg: format!("level {} missing", k + 1),
        })?;
        groups.push(g);
    }
    let mut maps = Vec::new();
    for k in 1..depth {
        let (perms, line) = images[k].take().ok_or(Error::Parse {
            line: last_line.max(1),
            msg: format!("map {} missing", k + 1),
        })?;
        let f =
            Homomorphism::new(&groups[k], &groups[k - 1], &perms).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        if !f.is_surjective() {
            return Err(Error::Parse {
                line,
                msg: format!("map {} is not surjective", k + 1),
            });
        }
        maps.push(f);
    }
    Tower::new(name, groups, maps, class)
}
