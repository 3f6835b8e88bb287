//! Representability decisions: bounded exhaustive search over candidate
//! assignments, the construction-based path, and the worked examples
//! (group algebras and the five-element algebra with unipoint that no
//! finite base can represent).

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{CheckResult, Elem, FiniteAlgebra, OpSymbol, Signature, Tables};
use crate::construction::{construct, realisables_algebraic, PLAIN_FRAGMENT};
use crate::network::{is_representation, representation_from_network, verify_representation};
use crate::pfun::{all_partial_functions, eval_op, Base, PartialFunction, Representation};
use crate::{Error, Result};

/// Largest base size the exhaustive search is willing to attempt.
pub const MAX_SEARCH_BASE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Outcome {
    Representable,
    NotOnBase,
    Inconclusive,
}

/// Search effort: assignments attempted and wall-clock time. Node counts
/// are deterministic; elapsed time is informational only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

/// The verdict of a decision procedure. `k` is the base size of the
/// witness, or the largest base size ruled out; `None` on a negative
/// verdict means no finite base works at all.
#[derive(Debug, Clone)]
pub struct Decision {
    pub outcome: Outcome,
    pub k: Option<usize>,
    pub witness: Option<Representation>,
    pub reason: Option<String>,
    pub stats: SearchStats,
}

fn diagonal_element(alg: &FiniteAlgebra, a: Elem) -> bool {
    alg.dom_of(a) == a && alg.ran_of(a) == a
}

/// Fixed assignment order: constants first, then elements forced to be
/// partial identities, then the remaining atoms, then everything else.
fn assignment_order(alg: &FiniteAlgebra) -> Vec<Elem> {
    let atoms: BTreeSet<Elem> = alg.atoms().atoms.into_iter().collect();
    let priority = |a: Elem| -> usize {
        if alg.zero_const() == Some(a) || alg.ident_const() == Some(a) {
            0
        } else if diagonal_element(alg, a) {
            1
        } else if atoms.contains(&a) {
            2
        } else {
            3
        }
    };
    let mut order: Vec<Elem> = alg.elems().collect();
    order.sort_by_key(|&a| (priority(a), a));
    order
}

struct Search<'a> {
    alg: &'a FiniteAlgebra,
    k: usize,
    order: Vec<Elem>,
    theta: Vec<Option<PartialFunction>>,
    introduced: usize,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(alg: &'a FiniteAlgebra, k: usize) -> Self {
        Search {
            alg,
            k,
            order: assignment_order(alg),
            theta: vec![None; alg.n()],
            introduced: 0,
            nodes: 0,
        }
    }

    /// Base points must enter in increasing order as the fixed element
    /// order is assigned; anything else is a renaming of a candidate
    /// already visited. Returns the new introduced count.
    fn introduces_in_order(&self, f: &PartialFunction) -> Option<usize> {
        let mut next = self.introduced;
        for &(x, y) in f.pairs() {
            for p in [x, y] {
                if p >= self.k {
                    return None;
                }
                if p == next {
                    next += 1;
                } else if p > next {
                    return None;
                }
            }
        }
        Some(next)
    }

    fn candidates(&self, a: Elem) -> Vec<PartialFunction> {
        if self.alg.zero_const() == Some(a) {
            return vec![PartialFunction::empty()];
        }
        if self.alg.ident_const() == Some(a) {
            return vec![crate::pfun::identity(self.k)];
        }
        if diagonal_element(self.alg, a) {
            return (0..1u32 << self.k)
                .map(|mask| {
                    PartialFunction::diagonal((0..self.k).filter(|&p| mask >> p & 1 == 1))
                })
                .collect();
        }
        let dom_set: Option<Vec<usize>> = self.theta[self.alg.dom_of(a)]
            .as_ref()
            .map(|f| f.domain().collect());
        let ran_set: Option<Vec<usize>> = self.theta[self.alg.ran_of(a)]
            .as_ref()
            .map(|f| f.domain().collect());
        match (dom_set, ran_set) {
            (Some(p), Some(q)) => total_surjections(&p, &q),
            _ => all_partial_functions(self.k),
        }
    }

    /// Every operation instance whose participants are all assigned must
    /// already hold; `a` is the element just assigned.
    fn consistent_after(&self, a: Elem) -> bool {
        let assigned = |x: Elem| self.theta[x].as_ref();
        for sym in self.alg.sig().unary_symbols() {
            for x in self.alg.elems() {
                let r = self.alg.eval_unary(sym, x).unwrap();
                if a != x && a != r {
                    continue;
                }
                if let (Some(fx), Some(fr)) = (assigned(x), assigned(r)) {
                    if eval_op(sym, &[fx], self.k) != *fr {
                        return false;
                    }
                }
            }
        }
        for sym in self.alg.sig().binary_symbols() {
            for x in self.alg.elems() {
                for y in self.alg.elems() {
                    let r = self.alg.eval_binary(sym, x, y).unwrap();
                    if a != x && a != y && a != r {
                        continue;
                    }
                    if let (Some(fx), Some(fy), Some(fr)) =
                        (assigned(x), assigned(y), assigned(r))
                    {
                        if eval_op(sym, &[fx, fy], self.k) != *fr {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, idx: usize) -> Option<Representation> {
        if idx == self.order.len() {
            if self.introduced != self.k {
                return None;
            }
            let functions: Vec<PartialFunction> =
                self.theta.iter().map(|f| f.clone().unwrap()).collect();
            let rep = Representation {
                base: Base::numbered(self.k),
                functions,
            };
            return match verify_representation(self.alg, &rep) {
                Ok(verdict) if verdict.pass() => Some(rep),
                _ => None,
            };
        }
        let a = self.order[idx];
        for cand in self.candidates(a) {
            self.nodes += 1;
            let Some(next_introduced) = self.introduces_in_order(&cand) else {
                continue;
            };
            let saved = self.introduced;
            self.theta[a] = Some(cand);
            self.introduced = next_introduced;
            if self.consistent_after(a) {
                if let Some(witness) = self.run(idx + 1) {
                    return Some(witness);
                }
            }
            self.theta[a] = None;
            self.introduced = saved;
        }
        None
    }
}

/// All total functions from `p` onto exactly `q`, in lexicographic order.
fn total_surjections(p: &[usize], q: &[usize]) -> Vec<PartialFunction> {
    if p.is_empty() {
        return if q.is_empty() {
            vec![PartialFunction::empty()]
        } else {
            Vec::new()
        };
    }
    if q.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; p.len()];
    loop {
        let pairs: Vec<(usize, usize)> = p.iter().zip(&pick).map(|(&x, &i)| (x, q[i])).collect();
        let hit: BTreeSet<usize> = pairs.iter().map(|&(_, y)| y).collect();
        if hit.len() == q.len() {
            out.push(PartialFunction::from_pairs(pairs).unwrap());
        }
        let mut pos = p.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if pick[pos] + 1 < q.len() {
                pick[pos] += 1;
                pick[pos + 1..].fill(0);
                break;
            }
        }
    }
}

fn require_valid(alg: &FiniteAlgebra) -> Result<()> {
    let report = alg.validate();
    if let Some(failure) = report.failures().next() {
        return Err(Error::Inconsistent(format!(
            "algebra fails validation: {}",
            failure.name
        )));
    }
    Ok(())
}

/// Searches base sizes 0..=k_max exhaustively for a representation,
/// pruning by forced constants, partial-identity shapes, operation
/// equations over assigned elements, and a canonical base-point order.
pub fn brute_force_decide(alg: &FiniteAlgebra, k_max: usize) -> Result<Decision> {
    require_valid(alg)?;
    if k_max > MAX_SEARCH_BASE {
        return Err(Error::Capacity(format!(
            "base sizes beyond {MAX_SEARCH_BASE} are not searchable; asked for {k_max}"
        )));
    }
    let start = Instant::now();
    let mut nodes = 0;
    for k in 0..=k_max {
        let mut search = Search::new(alg, k);
        let witness = search.run(0);
        nodes += search.nodes;
        if let Some(rep) = witness {
            return Ok(Decision {
                outcome: Outcome::Representable,
                k: Some(k),
                witness: Some(rep),
                reason: None,
                stats: SearchStats {
                    nodes,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                },
            });
        }
    }
    Ok(Decision {
        outcome: Outcome::NotOnBase,
        k: Some(k_max),
        witness: None,
        reason: None,
        stats: SearchStats {
            nodes,
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
    })
}

/// Signatures whose realisable characterization is exact, so a failed
/// construction rules out every finite base rather than just this run.
fn characterization_is_exact(sig: &Signature) -> bool {
    sig.has(OpSymbol::Antidom) || sig.symbols().all(|s| PLAIN_FRAGMENT.contains(&s))
}

/// Decides by the algebraic route: screen the quasi-equational laws,
/// compute the profile from the tables, construct, and check. A failure is
/// conclusive exactly when the signature's characterization is.
pub fn decide_via_construction(alg: &FiniteAlgebra) -> Result<Decision> {
    require_valid(alg)?;
    let start = Instant::now();
    let stats = |start: Instant| SearchStats {
        nodes: 0,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };

    let laws = alg.necessary_laws();
    if let Some(failure) = laws.failures().next() {
        return Ok(Decision {
            outcome: Outcome::NotOnBase,
            k: None,
            witness: None,
            reason: Some(format!(
                "fails a law every representation satisfies: {}",
                failure.name
            )),
            stats: stats(start),
        });
    }

    let profile = realisables_algebraic(alg)?;
    let negative = |reason: String| {
        let outcome = if characterization_is_exact(alg.sig()) {
            Outcome::NotOnBase
        } else {
            Outcome::Inconclusive
        };
        Decision {
            outcome,
            k: None,
            witness: None,
            reason: Some(reason),
            stats: stats(start),
        }
    };
    match construct(alg, &profile, alg.n()) {
        Ok(trace) => {
            let verdict = is_representation(&trace.network, alg);
            if verdict.pass() {
                let witness = representation_from_network(&trace.network, alg)?;
                Ok(Decision {
                    outcome: Outcome::Representable,
                    k: Some(trace.network.n_vertices()),
                    witness: Some(witness),
                    reason: None,
                    stats: stats(start),
                })
            } else {
                Ok(negative(format!(
                    "constructed network fails the checker: {:?}",
                    verdict.failures[0]
                )))
            }
        }
        Err(Error::ConstructionFailure(msg)) | Err(Error::Inconsistent(msg)) => {
            Ok(negative(msg))
        }
        Err(e) => Err(e),
    }
}

/// The counting argument that rules out every finite base for the
/// five-element algebra: its premises checked against the tables, and the
/// arithmetic clash between them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CardinalityArgument {
    pub premises: Vec<CheckResult>,
    pub conclusion: String,
}

impl CardinalityArgument {
    pub fn verify(alg: &FiniteAlgebra) -> Self {
        let (d, r, f, g) = (1, 2, 3, 4);
        let bijection = alg.eval_unary(OpSymbol::Unipoint, f) == Some(alg.ran_of(f))
            && alg.dom_of(f) == d
            && alg.ran_of(f) == r;
        let doubling = alg.eval_unary(OpSymbol::Unipoint, g) == Some(0)
            && alg.dom_of(g) == d
            && alg.ran_of(g) == r;
        let nonempty = !alg.leq(r, 0);
        let arithmetic = (0usize..=64)
            .all(|n_d| (0usize..=64).all(|n_r| Self::violated(n_d, n_r).is_some()));
        let witness = |ok: bool, w: &str| if ok { None } else { Some(w.to_string()) };
        CardinalityArgument {
            premises: vec![
                CheckResult::new(
                    "f maps the d-points bijectively onto the r-points",
                    witness(bijection, "ran f differs from unipoint f"),
                ),
                CheckResult::new(
                    "every r-point has at least two g-preimages",
                    witness(doubling, "unipoint g is not the zero"),
                ),
                CheckResult::new(
                    "at least one r-point exists",
                    witness(nonempty, "r sits below the zero"),
                ),
                CheckResult::new(
                    "no point counts satisfy all three",
                    witness(arithmetic, "a satisfying pair of counts exists"),
                ),
            ],
            conclusion: "equal counts on both sides, a doubling from d to r, and a \
                         nonempty r side cannot hold together on a finite base"
                .into(),
        }
    }

    /// Which of the three facts a candidate with these point counts breaks.
    pub fn violated(n_d: usize, n_r: usize) -> Option<&'static str> {
        if n_r == 0 {
            Some("no r-point: faithfulness needs one")
        } else if n_d != n_r {
            Some("f cannot be a bijection between sides of different size")
        } else if n_d < 2 * n_r {
            Some("some r-point lacks two g-preimages")
        } else {
            None
        }
    }

    pub fn holds(&self) -> bool {
        self.premises.iter().all(|p| p.pass)
    }
}

/// The five-element algebra {0, d, r, f, g} over {compose, meet, dom, ran,
/// unipoint}, shipped as data, together with its counting argument.
pub fn counterexample_f() -> (FiniteAlgebra, CardinalityArgument) {
    let sig = Signature::allowing_unipoint([
        OpSymbol::Compose,
        OpSymbol::Meet,
        OpSymbol::Dom,
        OpSymbol::Ran,
        OpSymbol::Unipoint,
    ])
    .unwrap();
    let names = ["0", "d", "r", "f", "g"].map(String::from).to_vec();
    let compose = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 0, 3, 4],
        vec![0, 0, 2, 0, 0],
        vec![0, 0, 3, 0, 0],
        vec![0, 0, 4, 0, 0],
    ];
    let meet = (0..5)
        .map(|i| (0..5).map(|j| if i == j { i } else { 0 }).collect())
        .collect();
    let alg = FiniteAlgebra::new(
        sig,
        names,
        Tables {
            compose: Some(compose),
            meet: Some(meet),
            dom: Some(vec![0, 1, 2, 1, 1]),
            ran: Some(vec![0, 1, 2, 2, 2]),
            unipoint: Some(vec![0, 1, 2, 2, 0]),
            ..Tables::default()
        },
    )
    .unwrap();
    let argument = CardinalityArgument::verify(&alg);
    (alg, argument)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "status", content = "detail")]
pub enum EntryStatus {
    /// The prefix evaluates the entry exactly.
    Confirmed,
    /// The entry differs only at points whose g-assignment runs past the
    /// prefix; the detail names them.
    Frontier(String),
    /// A genuine disagreement with the table; never expected.
    Mismatch(String),
}

/// One table entry cross-checked against a prefix model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryReport {
    pub op: OpSymbol,
    pub args: Vec<String>,
    pub expected: String,
    pub status: EntryStatus,
}

/// A finite prefix of the two-sided model behind the counterexample:
/// points {0..k−1} × {sides a, b}, f lifting each n from side a to side b,
/// and g following the least-two assignment rule.
#[derive(Debug, Clone)]
pub struct PrefixModel {
    pub base: Base,
    /// One set of pairs per element of the five-element carrier.
    pub theta: Vec<PartialFunction>,
    pub report: Vec<EntryReport>,
}

/// Side-a point m ↦ side-b level of its g-image under the least-two rule:
/// each level n in turn grabs the two least unassigned side-a points other
/// than n itself.
fn g_assignments(levels: usize) -> Vec<(usize, usize)> {
    let horizon = 2 * levels + 4;
    let mut pool: BTreeSet<usize> = (0..horizon).collect();
    let mut out = Vec::new();
    for n in 0..levels {
        let picks: Vec<usize> = pool.iter().copied().filter(|&m| m != n).take(2).collect();
        for &m in &picks {
            pool.remove(&m);
            out.push((m, n));
        }
    }
    out
}

/// Builds the k-level prefix and cross-checks every entry of the
/// five-element table against it, flagging the frontier where g's
/// assignments leave the prefix.
pub fn prefix_model_f(k: usize) -> Result<PrefixModel> {
    if k < 2 {
        return Err(Error::MalformedInput(
            "the prefix model needs at least two levels".into(),
        ));
    }
    let (alg, _) = counterexample_f();
    let point = |n: usize, side: usize| 2 * n + side;
    let names: Vec<String> = (0..2 * k)
        .map(|i| format!("{}{}", i / 2, if i % 2 == 0 { "a" } else { "b" }))
        .collect();
    let base = Base::new(names)?;

    let assignments = g_assignments(k);
    let g_pairs: Vec<(usize, usize)> = assignments
        .iter()
        .filter(|&&(m, _)| m < k)
        .map(|&(m, n)| (point(m, 0), point(n, 1)))
        .collect();
    let unsettled: BTreeSet<usize> = assignments
        .iter()
        .filter(|&&(m, _)| m >= k)
        .map(|&(_, n)| n)
        .collect();
    let frontier_points: BTreeSet<usize> = unsettled.iter().map(|&n| point(n, 1)).collect();

    let theta = vec![
        PartialFunction::empty(),
        PartialFunction::diagonal((0..k).map(|n| point(n, 0))),
        PartialFunction::diagonal((0..k).map(|n| point(n, 1))),
        PartialFunction::from_pairs((0..k).map(|n| (point(n, 0), point(n, 1)))).unwrap(),
        PartialFunction::from_pairs(g_pairs).unwrap(),
    ];

    let strip = |f: &PartialFunction| -> PartialFunction {
        PartialFunction::from_pairs(
            f.pairs()
                .iter()
                .copied()
                .filter(|&(x, y)| !frontier_points.contains(&x) && !frontier_points.contains(&y)),
        )
        .unwrap()
    };
    let frontier_names = || {
        let shown: Vec<&str> = frontier_points.iter().map(|&p| base.name(p)).collect();
        shown.join(", ")
    };

    let mut report = Vec::new();
    let mut entry = |sym: OpSymbol, args: Vec<Elem>, expected: Elem, actual: PartialFunction| {
        let status = if actual == theta[expected] {
            EntryStatus::Confirmed
        } else if strip(&actual) == strip(&theta[expected]) {
            EntryStatus::Frontier(format!("awaiting g beyond the prefix at {}", frontier_names()))
        } else {
            EntryStatus::Mismatch(format!(
                "prefix gives {:?}, table expects {:?}",
                actual.pairs(),
                theta[expected].pairs()
            ))
        };
        report.push(EntryReport {
            op: sym,
            args: args.iter().map(|&a| alg.name(a).to_string()).collect(),
            expected: alg.name(expected).to_string(),
            status,
        });
    };
    for sym in alg.sig().unary_symbols() {
        for x in alg.elems() {
            entry(
                sym,
                vec![x],
                alg.eval_unary(sym, x).unwrap(),
                eval_op(sym, &[&theta[x]], 2 * k),
            );
        }
    }
    for sym in alg.sig().binary_symbols() {
        for x in alg.elems() {
            for y in alg.elems() {
                entry(
                    sym,
                    vec![x, y],
                    alg.eval_binary(sym, x, y).unwrap(),
                    eval_op(sym, &[&theta[x], &theta[y]], 2 * k),
                );
            }
        }
    }

    Ok(PrefixModel {
        base,
        theta,
        report,
    })
}

/// Validates a Cayley table and returns the group-with-zero algebra over
/// {compose, meet, antidom, ran} together with its right-translation
/// representation.
pub fn group_algebra(table: &[Vec<usize>]) -> Result<(FiniteAlgebra, Representation)> {
    let order = table.len();
    let auto: Vec<String> = (0..order)
        .map(|i| if i == 0 { "e".into() } else { format!("g{i}") })
        .collect();
    group_algebra_named(table, &auto)
}

/// As `group_algebra`, with caller-supplied element names; the identity
/// must come out at the named position of index 0.
pub fn group_algebra_named(
    table: &[Vec<usize>],
    element_names: &[String],
) -> Result<(FiniteAlgebra, Representation)> {
    let order = table.len();
    if order == 0 {
        return Err(Error::MalformedInput("not a group: empty table".into()));
    }
    if element_names.len() != order {
        return Err(Error::MalformedInput(format!(
            "expected {order} element names, got {}",
            element_names.len()
        )));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != order {
            return Err(Error::MalformedInput(format!(
                "not a group: row {i} has {} entries, expected {order}",
                row.len()
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= order {
                return Err(Error::MalformedInput(format!(
                    "not a group: entry [{i}][{j}] = {v} out of range"
                )));
            }
        }
    }
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::MalformedInput("not a group: no identity".into()))?;
    if identity != 0 {
        return Err(Error::MalformedInput(
            "not a group table in the expected form: identity must be element 0".into(),
        ));
    }
    for x in 0..order {
        for y in 0..order {
            for z in 0..order {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Err(Error::MalformedInput(format!(
                        "not a group: associativity fails at ({x}, {y}, {z})"
                    )));
                }
            }
        }
    }
    for x in 0..order {
        if !(0..order).any(|y| table[x][y] == identity && table[y][x] == identity) {
            return Err(Error::MalformedInput(format!(
                "not a group: element {x} has no inverse"
            )));
        }
    }

    let n = order + 1;
    let sig = Signature::new([
        OpSymbol::Compose,
        OpSymbol::Meet,
        OpSymbol::Antidom,
        OpSymbol::Ran,
    ])
    .unwrap();
    let mut names = vec!["0".to_string()];
    names.extend(element_names.iter().cloned());
    let compose: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == 0 || j == 0 {
                        0
                    } else {
                        table[i - 1][j - 1] + 1
                    }
                })
                .collect()
        })
        .collect();
    let meet = (0..n)
        .map(|i| (0..n).map(|j| if i == j { i } else { 0 }).collect())
        .collect();
    let antidom: Vec<Elem> = (0..n).map(|i| if i == 0 { 1 } else { 0 }).collect();
    let ran: Vec<Elem> = (0..n).map(|i| if i == 0 { 0 } else { 1 }).collect();
    let alg = FiniteAlgebra::new(
        sig,
        names,
        Tables {
            compose: Some(compose),
            meet: Some(meet),
            antidom: Some(antidom),
            ran: Some(ran),
            ..Tables::default()
        },
    )?;

    let base = Base::new(element_names.to_vec())?;
    let mut functions = vec![PartialFunction::empty()];
    for gv in 0..order {
        functions.push(
            PartialFunction::from_pairs((0..order).map(|h| (h, table[h][gv]))).unwrap(),
        );
    }
    Ok((alg, Representation { base, functions }))
}

/// The two-element group with zero.
pub fn z2() -> (FiniteAlgebra, Representation) {
    group_algebra_named(
        &[vec![0, 1], vec![1, 0]],
        &["e".into(), "a".into()],
    )
    .unwrap()
}

/// The three-element cyclic group with zero.
pub fn z3() -> (FiniteAlgebra, Representation) {
    group_algebra_named(
        &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        &["e".into(), "a".into(), "aa".into()],
    )
    .unwrap()
}

/// The symmetric group on three letters with zero.
pub fn s3() -> (FiniteAlgebra, Representation) {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
    ];
    let compose = |p: [usize; 3], q: [usize; 3]| [q[p[0]], q[p[1]], q[p[2]]];
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|&p| {
            perms
                .iter()
                .map(|&q| perms.iter().position(|&r| r == compose(p, q)).unwrap())
                .collect()
        })
        .collect();
    let names = ["e", "r", "rr", "s", "rs", "rrs"].map(String::from).to_vec();
    group_algebra_named(&table, &names).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::network::from_concrete;
    use crate::pfun::ConcreteAlgebra;

    fn pf(pairs: &[(usize, usize)]) -> PartialFunction {
        PartialFunction::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn one_element_algebra_is_representable_on_the_empty_base() {
        let sig =
            Signature::new([OpSymbol::Compose, OpSymbol::Meet, OpSymbol::Dom, OpSymbol::Ran])
                .unwrap();
        let alg = FiniteAlgebra::new(
            sig,
            vec!["id".into()],
            Tables {
                compose: Some(vec![vec![0]]),
                meet: Some(vec![vec![0]]),
                dom: Some(vec![0]),
                ran: Some(vec![0]),
                ..Tables::default()
            },
        )
        .unwrap();
        let decision = brute_force_decide(&alg, 0).unwrap();
        assert_eq!(decision.outcome, Outcome::Representable);
        assert_eq!(decision.k, Some(0));
        assert!(decision.witness.unwrap().functions[0].is_empty());
    }

    #[test]
    fn z2_brute_force_finds_the_translation_witness() {
        let (alg, _) = z2();
        let decision = brute_force_decide(&alg, 2).unwrap();
        assert_eq!(decision.outcome, Outcome::Representable);
        assert_eq!(decision.k, Some(2));
        let witness = decision.witness.unwrap();
        assert_eq!(witness.functions[0], PartialFunction::empty());
        assert_eq!(witness.functions[1], pf(&[(0, 0), (1, 1)]));
        assert_eq!(witness.functions[2], pf(&[(0, 1), (1, 0)]));
    }

    #[test]
    fn search_is_deterministic() {
        let (alg, _) = z2();
        let first = brute_force_decide(&alg, 2).unwrap();
        let second = brute_force_decide(&alg, 2).unwrap();
        assert_eq!(first.stats.nodes, second.stats.nodes);
        assert_eq!(
            first.witness.unwrap().functions,
            second.witness.unwrap().functions
        );
    }

    #[test]
    fn counterexample_fails_on_tiny_bases() {
        let (alg, _) = counterexample_f();
        let decision = brute_force_decide(&alg, 2).unwrap();
        assert_eq!(decision.outcome, Outcome::NotOnBase);
        assert_eq!(decision.k, Some(2));
        assert!(decision.witness.is_none());
    }

    #[test]
    fn search_base_cap_enforced() {
        let (alg, _) = z2();
        assert!(matches!(
            brute_force_decide(&alg, 9),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn construction_decision_on_the_group_with_zero() {
        let (alg, _) = z2();
        let decision = decide_via_construction(&alg).unwrap();
        assert_eq!(decision.outcome, Outcome::Representable);
        assert_eq!(decision.k, Some(6), "three copies of the two-vertex present");
        let witness = decision.witness.unwrap();
        assert!(verify_representation(&alg, &witness).unwrap().pass());
    }

    #[test]
    fn construction_decision_rejects_unsupported_signatures() {
        let (alg, _) = counterexample_f();
        assert!(matches!(
            decide_via_construction(&alg),
            Err(Error::UnsupportedSignature(_))
        ));
    }

    #[test]
    fn law_screen_rules_out_before_constructing() {
        let sig =
            Signature::new([OpSymbol::Compose, OpSymbol::Meet, OpSymbol::Dom, OpSymbol::Ran])
                .unwrap();
        let alg = FiniteAlgebra::new(
            sig,
            ["z", "a", "t"].map(String::from).to_vec(),
            Tables {
                compose: Some(vec![vec![0; 3]; 3]),
                meet: Some(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]),
                dom: Some(vec![0, 2, 2]),
                ran: Some(vec![0, 2, 2]),
                ..Tables::default()
            },
        )
        .unwrap();
        let decision = decide_via_construction(&alg).unwrap();
        assert_eq!(decision.outcome, Outcome::NotOnBase);
        assert_eq!(decision.k, None, "the screen rules out every base");
        assert!(decision.reason.unwrap().contains("law"));
    }

    #[test]
    fn decision_paths_agree_on_a_concrete_closure() {
        let sig =
            Signature::new([OpSymbol::Compose, OpSymbol::Meet, OpSymbol::Dom, OpSymbol::Ran])
                .unwrap();
        let alg = ConcreteAlgebra::from_generators(
            sig,
            Base::numbered(3),
            &[pf(&[(1, 0), (2, 2)])],
            100,
        )
        .unwrap()
        .abstract_algebra()
        .unwrap();
        let by_search = brute_force_decide(&alg, 3).unwrap();
        let by_construction = decide_via_construction(&alg).unwrap();
        assert_eq!(by_search.outcome, Outcome::Representable);
        assert_eq!(by_construction.outcome, Outcome::Representable);
        assert_eq!(
            by_search.k,
            Some(2),
            "two points beat the generating base: without a zero constant \
             the least element may come out empty"
        );
    }

    #[test]
    fn counterexample_table_spot_values() {
        let (alg, argument) = counterexample_f();
        assert!(argument.holds());
        let (d, r, f, g) = (1, 2, 3, 4);
        assert_eq!(alg.compose(f, g), 0, "f lands on side b, g starts on side a");
        assert_eq!(alg.compose(d, f), f);
        assert_eq!(alg.compose(f, r), f);
        assert_eq!(alg.eval_unary(OpSymbol::Unipoint, g), Some(0));
        assert_eq!(alg.eval_unary(OpSymbol::Unipoint, f), Some(alg.ran_of(f)));
        assert_eq!(alg.meet(f, g), 0);
        assert_eq!(alg.dom_of(g), d);
        assert!(alg.validate().pass());
    }

    #[test]
    fn cardinality_argument_covers_every_count_pair() {
        for n_d in 0..=32 {
            for n_r in 0..=32 {
                assert!(
                    CardinalityArgument::violated(n_d, n_r).is_some(),
                    "counts ({n_d}, {n_r}) slipped through the counting argument"
                );
            }
        }
    }

    #[test]
    fn prefix_two_levels_shows_the_frontier() {
        let model = prefix_model_f(2).unwrap();
        let g = &model.theta[4];
        assert_eq!(
            g.pairs(),
            &[(0, 3), (2, 1)],
            "0a waits on level 1, 1a feeds level 0"
        );
        let entry = |op: OpSymbol, args: &[&str]| {
            model
                .report
                .iter()
                .find(|e| e.op == op && e.args == args)
                .unwrap()
        };
        assert!(
            matches!(entry(OpSymbol::Ran, &["g"]).status, EntryStatus::Confirmed),
            "both target levels keep a source inside the prefix"
        );
        assert!(
            matches!(
                entry(OpSymbol::Unipoint, &["g"]).status,
                EntryStatus::Frontier(_)
            ),
            "level 1 keeps only one of its two sources, so 1b looks uniquely hit"
        );
    }

    #[test]
    fn prefix_six_levels_matches_the_published_edges() {
        let model = prefix_model_f(6).unwrap();
        let g = &model.theta[4];
        let preimages = |target: usize| -> Vec<usize> {
            g.pairs()
                .iter()
                .filter(|&&(_, y)| y == target)
                .map(|&(x, _)| x)
                .collect()
        };
        assert_eq!(preimages(1), vec![2, 4], "level 0 takes 1a and 2a");
        assert_eq!(preimages(3), vec![0, 6], "level 1 takes 0a and 3a");
    }

    #[test]
    fn prefix_reports_have_no_mismatches() {
        for k in [2, 3, 6, 7, 12] {
            let model = prefix_model_f(k).unwrap();
            for e in &model.report {
                assert!(
                    !matches!(e.status, EntryStatus::Mismatch(_)),
                    "entry {:?} {:?} disagrees at k={k}: {:?}",
                    e.op,
                    e.args,
                    e.status
                );
            }
            let meet_fg = model
                .report
                .iter()
                .find(|e| e.op == OpSymbol::Meet && e.args == ["f", "g"])
                .unwrap();
            assert_eq!(
                meet_fg.status,
                EntryStatus::Confirmed,
                "f and g never share a pair on any prefix"
            );
        }
    }

    #[test]
    fn prefix_even_levels_settle_unipoint_of_g() {
        for k in [6, 12] {
            let model = prefix_model_f(k).unwrap();
            for e in &model.report {
                if e.op == OpSymbol::Unipoint {
                    assert_eq!(
                        e.status,
                        EntryStatus::Confirmed,
                        "unipoint of {:?} should settle at k={k}",
                        e.args
                    );
                }
            }
        }
    }

    #[test]
    fn group_representations_pass_the_checker() {
        for (alg, rep) in [z2(), z3(), s3()] {
            let verdict = verify_representation(&alg, &rep).unwrap();
            assert!(verdict.pass(), "failures: {:?}", verdict.failures);
        }
    }

    #[test]
    fn z3_nonzero_elements_are_atoms() {
        let (alg, _) = z3();
        let atoms = alg.atoms();
        assert_eq!(atoms.least, Some(0));
        assert_eq!(atoms.atoms, vec![1, 2, 3]);
        assert_eq!(alg.name(1), "e");
    }

    #[test]
    fn non_group_tables_rejected() {
        let flat = group_algebra(&[vec![0, 0], vec![0, 0]]);
        assert!(matches!(flat, Err(Error::MalformedInput(_))));
        let lopsided = group_algebra(&[vec![0, 1]]);
        assert!(matches!(lopsided, Err(Error::MalformedInput(_))));
    }

    #[test]
    fn cayley_representation_round_trips_through_a_network() {
        let (alg, rep) = z2();
        let net = from_concrete(&alg, &rep).unwrap();
        assert_eq!(net.n_vertices(), 2);
        assert_eq!(net.reflexive_label(0), 1, "e holds on every point");
        assert_eq!(net.label(0, 1), Some(2), "the swap connects the two points");
    }
}
