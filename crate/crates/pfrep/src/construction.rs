//! Realisability profiles, canonical futures and presents computed from the
//! operation tables alone, the copy-and-attach network construction, and
//! its size bound.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::algebra::{Elem, FiniteAlgebra, OpSymbol};
use crate::network::{find_isomorphism, Network};
use crate::{Error, Result};

/// Which domain elements can label reflexive edges, how they reach each
/// other, and how deep below the maximal classes each one sits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealisabilityProfile {
    realisables: Vec<Elem>,
    lesssim: BTreeSet<(Elem, Elem)>,
    classes: Vec<Vec<Elem>>,
    depths: Vec<usize>,
}

impl RealisabilityProfile {
    /// Derives the reaches relation, equivalence classes, and depths from a
    /// realisable set. The set must consist of elements fixed by dom and
    /// ran, and the reaches relation must come out transitive; both hold
    /// automatically when the set is read off an actual representation of a
    /// representable algebra.
    pub fn from_realisables(
        alg: &FiniteAlgebra,
        realisables: impl IntoIterator<Item = Elem>,
    ) -> Result<Self> {
        let set: BTreeSet<Elem> = realisables.into_iter().collect();
        for &a in &set {
            if a >= alg.n() {
                return Err(Error::MalformedInput(format!(
                    "realisable {a} out of range (carrier size {})",
                    alg.n()
                )));
            }
            if alg.dom_of(a) != a || alg.ran_of(a) != a {
                return Err(Error::InvalidProfile(format!(
                    "`{}` is not fixed by dom and ran",
                    alg.name(a)
                )));
            }
        }
        let realisables: Vec<Elem> = set.into_iter().collect();

        let mut lesssim = BTreeSet::new();
        for &a in &realisables {
            for &b in &realisables {
                if alg
                    .elems()
                    .any(|x| alg.dom_of(x) == a && alg.ran_of(x) == b)
                {
                    lesssim.insert((a, b));
                }
            }
        }
        for &(a, b) in &lesssim {
            for &c in &realisables {
                if lesssim.contains(&(b, c)) && !lesssim.contains(&(a, c)) {
                    return Err(Error::InvalidProfile(format!(
                        "reaches is not transitive: `{}` reaches `{}` reaches `{}`, \
                         but nothing has domain `{}` and range `{}`",
                        alg.name(a),
                        alg.name(b),
                        alg.name(c),
                        alg.name(a),
                        alg.name(c)
                    )));
                }
            }
        }

        let mut classes: Vec<Vec<Elem>> = Vec::new();
        let mut class_of: BTreeMap<Elem, usize> = BTreeMap::new();
        for &a in &realisables {
            if class_of.contains_key(&a) {
                continue;
            }
            let members: Vec<Elem> = realisables
                .iter()
                .copied()
                .filter(|&b| lesssim.contains(&(a, b)) && lesssim.contains(&(b, a)))
                .collect();
            for &b in &members {
                class_of.insert(b, classes.len());
            }
            classes.push(members);
        }

        let successors: Vec<BTreeSet<usize>> = classes
            .iter()
            .enumerate()
            .map(|(i, members)| {
                classes
                    .iter()
                    .enumerate()
                    .filter(|&(j, other)| {
                        j != i && lesssim.contains(&(members[0], other[0]))
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        fn chain_length(
            i: usize,
            successors: &[BTreeSet<usize>],
            memo: &mut Vec<Option<usize>>,
        ) -> usize {
            if let Some(d) = memo[i] {
                return d;
            }
            let d = successors[i]
                .iter()
                .map(|&j| 1 + chain_length(j, successors, memo))
                .max()
                .unwrap_or(0);
            memo[i] = Some(d);
            d
        }
        let mut memo = vec![None; classes.len()];
        let depths = (0..classes.len())
            .map(|i| chain_length(i, &successors, &mut memo))
            .collect();

        Ok(RealisabilityProfile {
            realisables,
            lesssim,
            classes,
            depths,
        })
    }

    pub fn realisables(&self) -> &[Elem] {
        &self.realisables
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn depth(&self, class: usize) -> usize {
        self.depths[class]
    }

    pub fn max_depth(&self) -> Option<usize> {
        self.depths.iter().copied().max()
    }

    pub fn reaches(&self, a: Elem, b: Elem) -> bool {
        self.lesssim.contains(&(a, b))
    }

    pub fn class_of(&self, a: Elem) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&a))
    }
}

/// Reads the realisable set off a network's reflexive labels.
pub fn realisables_from_representation(
    net: &Network,
    alg: &FiniteAlgebra,
) -> Result<RealisabilityProfile> {
    let labels: BTreeSet<Elem> = (0..net.n_vertices())
        .map(|x| net.reflexive_label(x))
        .collect();
    RealisabilityProfile::from_realisables(alg, labels)
}

pub(crate) const PLAIN_FRAGMENT: [OpSymbol; 7] = [
    OpSymbol::Compose,
    OpSymbol::Meet,
    OpSymbol::Dom,
    OpSymbol::Ran,
    OpSymbol::Zero,
    OpSymbol::Ident,
    OpSymbol::Fixset,
];

/// Computes the realisable set from the tables alone, for the signatures
/// where a characterization is known: with antidom, the atomic domain
/// elements; within {compose, meet, dom, ran, zero, ident, fixset}, the
/// range image minus the zero element.
pub fn realisables_algebraic(alg: &FiniteAlgebra) -> Result<RealisabilityProfile> {
    let sig = alg.sig();
    if sig.has(OpSymbol::Antidom) {
        let domains: BTreeSet<Elem> = alg.domain_elements().into_iter().collect();
        let atomic = alg
            .atoms()
            .atoms
            .into_iter()
            .filter(|a| domains.contains(a));
        return RealisabilityProfile::from_realisables(alg, atomic);
    }
    if sig.symbols().all(|s| PLAIN_FRAGMENT.contains(&s)) {
        let zero = alg.zero_const().or_else(|| alg.absorbing_zero());
        let image = alg
            .elems()
            .map(|a| alg.ran_of(a))
            .filter(|&r| Some(r) != zero);
        return RealisabilityProfile::from_realisables(alg, image);
    }
    Err(Error::UnsupportedSignature(format!(
        "no algebraic realisable characterization for {sig}: \
         it needs antidom, or must stay within {{compose, meet, dom, ran, zero, ident, fixset}}"
    )))
}

/// The network every vertex with a given reflexive label must see: one
/// vertex per element with that domain, edges labelled by the least element
/// carrying one to the other.
#[derive(Debug, Clone)]
pub struct CanonicalFuture {
    pub network: Network,
    /// Element behind each vertex, parallel to the network's vertices.
    pub elems: Vec<Elem>,
    /// Vertex index of the element α itself.
    pub root: usize,
}

/// Builds the canonical future of a domain element α from the tables: the
/// vertices are the elements with domain α, and (y_a, y_b) is labelled by
/// the meet of every c with a∘c = b, verified to satisfy the equation
/// itself.
pub fn canonical_future(alg: &FiniteAlgebra, alpha: Elem) -> Result<CanonicalFuture> {
    if alg.dom_of(alpha) != alpha {
        return Err(Error::MalformedInput(format!(
            "`{}` is not a domain element",
            alg.name(alpha)
        )));
    }
    let elems: Vec<Elem> = alg.elems().filter(|&a| alg.dom_of(a) == alpha).collect();
    let root = elems.iter().position(|&a| a == alpha).unwrap();
    let mut edges = BTreeMap::new();
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            let mut admitting = alg.elems().filter(|&c| alg.compose(a, c) == b);
            let Some(first) = admitting.next() else {
                continue;
            };
            let label = admitting.fold(first, |acc, c| alg.meet(acc, c));
            if alg.compose(a, label) != b {
                return Err(Error::Inconsistent(format!(
                    "canonical future at `{}`: the meet `{}` of the elements taking \
                     `{}` to `{}` does not itself take it there",
                    alg.name(alpha),
                    alg.name(label),
                    alg.name(a),
                    alg.name(b)
                )));
            }
            edges.insert((i, j), label);
        }
    }
    for (i, &a) in elems.iter().enumerate() {
        if !edges.contains_key(&(i, i)) {
            return Err(Error::Inconsistent(format!(
                "canonical future at `{}`: no element composes `{}` to itself",
                alg.name(alpha),
                alg.name(a)
            )));
        }
    }
    let network = Network::new(
        elems.iter().map(|&a| alg.name(a).to_string()).collect(),
        edges,
        alg.n(),
    )?;
    Ok(CanonicalFuture {
        network,
        elems,
        root,
    })
}

/// The canonical present: the canonical future restricted to the vertices
/// sharing a future with the root.
pub fn canonical_present(alg: &FiniteAlgebra, alpha: Elem) -> Result<CanonicalFuture> {
    let cf = canonical_future(alg, alpha)?;
    let p = cf.network.present(cf.root);
    let root = p.iter().position(|&i| i == cf.root).unwrap();
    Ok(CanonicalFuture {
        network: cf.network.induced(&p),
        elems: p.iter().map(|&i| cf.elems[i]).collect(),
        root,
    })
}

/// One way to hang a fresh copy of a class's canonical present onto the
/// network built so far: a target vertex for each strictly-lower vertex of
/// the canonical future.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowableChoice {
    pub class: usize,
    /// Canonical-future vertex index → vertex of the prior network.
    pub attach: BTreeMap<usize, usize>,
}

/// Enumerates the allowable choices for a class against the network built
/// at lower depths, in lexicographic target order.
pub fn enumerate_allowable(
    alg: &FiniteAlgebra,
    profile: &RealisabilityProfile,
    class: usize,
    n_prev: &Network,
) -> Result<Vec<AllowableChoice>> {
    let cf = canonical_future(alg, profile.classes()[class][0])?;
    enumerate_allowable_for(&cf, class, n_prev)
}

fn enumerate_allowable_for(
    cf: &CanonicalFuture,
    class: usize,
    n_prev: &Network,
) -> Result<Vec<AllowableChoice>> {
    let present = cf.network.present(cf.root);
    let lower: Vec<usize> = (0..cf.network.n_vertices())
        .filter(|v| !present.contains(v))
        .collect();

    let mut out = Vec::new();
    let mut attach: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    search_attachments(
        cf, &present, &lower, n_prev, class, 0, &mut attach, &mut used, &mut out,
    );
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_attachments(
    cf: &CanonicalFuture,
    present: &[usize],
    lower: &[usize],
    n_prev: &Network,
    class: usize,
    idx: usize,
    attach: &mut BTreeMap<usize, usize>,
    used: &mut BTreeSet<usize>,
    out: &mut Vec<AllowableChoice>,
) {
    if idx == lower.len() {
        if extension_future_matches(cf, present, attach, n_prev) {
            out.push(AllowableChoice {
                class,
                attach: attach.clone(),
            });
        }
        return;
    }
    let v = lower[idx];
    for w in 0..n_prev.n_vertices() {
        if used.contains(&w) || n_prev.reflexive_label(w) != cf.network.reflexive_label(v) {
            continue;
        }
        let mirrors = attach.iter().all(|(&u, &wu)| {
            cf.network.label(v, u) == n_prev.label(w, wu)
                && cf.network.label(u, v) == n_prev.label(wu, w)
        });
        if !mirrors {
            continue;
        }
        attach.insert(v, w);
        used.insert(w);
        search_attachments(
            cf, present, lower, n_prev, class, idx + 1, attach, used, out,
        );
        attach.remove(&v);
        used.remove(&w);
    }
}

/// Builds the future a fresh present copy would have under this attachment
/// and checks it is isomorphic to the canonical future, anchored at the
/// root.
fn extension_future_matches(
    cf: &CanonicalFuture,
    present: &[usize],
    attach: &BTreeMap<usize, usize>,
    n_prev: &Network,
) -> bool {
    let targets: Vec<usize> = attach.values().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let pres_pos: BTreeMap<usize, usize> =
        present.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let targ_pos: BTreeMap<usize, usize> = targets
        .iter()
        .enumerate()
        .map(|(k, &t)| (t, present.len() + k))
        .collect();

    let mut vertices: Vec<String> = present
        .iter()
        .map(|&p| format!("new:{}", cf.network.vertex_name(p)))
        .collect();
    vertices.extend(
        targets
            .iter()
            .map(|&t| format!("prev:{}", n_prev.vertex_name(t))),
    );
    let mut edges: BTreeMap<(usize, usize), Elem> = BTreeMap::new();
    for &u in present {
        for &v in present {
            if let Some(l) = cf.network.label(u, v) {
                edges.insert((pres_pos[&u], pres_pos[&v]), l);
            }
        }
        for (&lv, &t) in attach {
            if let Some(l) = cf.network.label(u, lv) {
                edges.insert((pres_pos[&u], targ_pos[&t]), l);
            }
        }
    }
    for &t1 in &targets {
        for &t2 in &targets {
            if let Some(l) = n_prev.label(t1, t2) {
                edges.insert((targ_pos[&t1], targ_pos[&t2]), l);
            }
        }
    }
    let Ok(mini) = Network::new(vertices, edges, usize::MAX) else {
        return false;
    };
    find_isomorphism(&mini, pres_pos[&cf.root], &cf.network, cf.root).is_some()
}

/// One record per class built: how many choices it admitted and how many
/// vertices its copies contributed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub depth: usize,
    pub class: usize,
    pub choices: usize,
    pub vertices_added: usize,
}

/// The stages of a construction run together with the final network.
#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub stages: Vec<Stage>,
    pub network: Network,
}

/// Runs the construction: depth by depth, for every class at that depth and
/// every allowable choice, m fresh copies of the canonical present are
/// added with the chosen edges. Vertex ids encode depth, class, choice,
/// copy, and element, so runs are reproducible.
pub fn construct(
    alg: &FiniteAlgebra,
    profile: &RealisabilityProfile,
    m: usize,
) -> Result<ConstructionTrace> {
    if m == 0 {
        return Err(Error::MalformedInput("multiplicity must be positive".into()));
    }
    if alg.sig().has(OpSymbol::Opposite) && m < alg.n() {
        return Err(Error::MalformedInput(format!(
            "multiplicity {m} is below the carrier size {}, which opposite requires",
            alg.n()
        )));
    }

    let futures: Vec<CanonicalFuture> = profile
        .classes()
        .iter()
        .map(|members| canonical_future(alg, members[0]))
        .collect::<Result<_>>()?;

    let mut vertices: Vec<String> = Vec::new();
    let mut edges: BTreeMap<(usize, usize), Elem> = BTreeMap::new();
    let mut stages = Vec::new();

    let Some(depth_limit) = profile.max_depth() else {
        let network = Network::new(vertices, edges, alg.n())?;
        return Ok(ConstructionTrace { stages, network });
    };
    for depth in 0..=depth_limit {
        let snapshot = Network::new(vertices.clone(), edges.clone(), alg.n())?;
        for (class_idx, members) in profile.classes().iter().enumerate() {
            if profile.depth(class_idx) != depth {
                continue;
            }
            let cf = &futures[class_idx];
            let choices = enumerate_allowable_for(cf, class_idx, &snapshot)?;
            if choices.is_empty() {
                let shown: Vec<&str> = members.iter().map(|&a| alg.name(a)).collect();
                return Err(Error::ConstructionFailure(format!(
                    "no allowable choice for class {{{}}} at depth {depth}",
                    shown.join(", ")
                )));
            }
            let present = cf.network.present(cf.root);
            let added_before = vertices.len();
            for (choice_idx, choice) in choices.iter().enumerate() {
                for copy in 0..m {
                    let start = vertices.len();
                    let pos_of: BTreeMap<usize, usize> = present
                        .iter()
                        .enumerate()
                        .map(|(k, &p)| (p, start + k))
                        .collect();
                    for &p in &present {
                        vertices.push(format!(
                            "{depth}.{class_idx}.{choice_idx}.{copy}.{}",
                            alg.name(cf.elems[p])
                        ));
                    }
                    for &u in &present {
                        for &v in &present {
                            if let Some(l) = cf.network.label(u, v) {
                                edges.insert((pos_of[&u], pos_of[&v]), l);
                            }
                        }
                        for (&lv, &target) in &choice.attach {
                            if let Some(l) = cf.network.label(u, lv) {
                                edges.insert((pos_of[&u], target), l);
                            }
                        }
                    }
                }
            }
            stages.push(Stage {
                depth,
                class: class_idx,
                choices: choices.len(),
                vertices_added: vertices.len() - added_before,
            });
        }
    }

    let network = Network::new(vertices, edges, alg.n())?;
    Ok(ConstructionTrace { stages, network })
}

/// The closed-form bound on the constructed base: |A| raised to
/// 2(d+1)|A|^d, as an exact big integer. One-element algebras need no
/// vertices at all.
pub fn size_bound(n_elems: usize, max_depth: usize) -> Result<BigUint> {
    if n_elems <= 1 {
        return Ok(BigUint::from(0u32));
    }
    let overflow = || Error::Capacity("size bound exponent does not fit in 32 bits".into());
    let d32: u32 = max_depth.try_into().map_err(|_| overflow())?;
    let n = n_elems as u64;
    let tower = n.checked_pow(d32).ok_or_else(overflow)?;
    let exp = (max_depth as u64 + 1)
        .checked_mul(2)
        .and_then(|x| x.checked_mul(tower))
        .ok_or_else(overflow)?;
    let exp: u32 = exp.try_into().map_err(|_| overflow())?;
    Ok(BigUint::from(n_elems).pow(exp))
}

/// Stage-by-stage bounds: |N_0| ≤ |A|² and
/// |N_k| ≤ |N_{k−1}| + |A|²·|N_{k−1}|^{|A|}, one entry per depth.
pub fn size_bound_recurrence(n_elems: usize, max_depth: usize) -> Result<Vec<BigUint>> {
    if n_elems <= 1 {
        return Ok(vec![BigUint::from(0u32); max_depth + 1]);
    }
    let exp: u32 = n_elems
        .try_into()
        .map_err(|_| Error::Capacity("carrier size does not fit in 32 bits".into()))?;
    let n2 = BigUint::from(n_elems) * n_elems;
    let mut out = vec![n2.clone()];
    for _ in 0..max_depth {
        let prev = out.last().unwrap();
        out.push(prev + &n2 * prev.pow(exp));
    }
    Ok(out)
}
