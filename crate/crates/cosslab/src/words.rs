//! The word problem for canonical 2-isomorphisms: words in expanded coherers
//! (and phi expansions), normalization to the canonical via-the-sink form, and
//! parallel-word equality with a full rewrite trace.
//!
//! Equality is decided by normalizing both words to the canonical
//! least-laterality-greedy form routed through the component sink (the
//! in-vertex, or the all-zero tuple in the enhanced case). Every normalization
//! step is one of three relation kinds (hexagon, interchange, phi-hexagon) or
//! a free-groupoid cancellation, and the recorded trace is replayed and
//! validated step by step before being returned.

use crate::graph::{greedy_descent, greedy_step, CoherenceEdge, EdgeKind, FaceTuple};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// One letter of a word: an edge traversed forwards or backwards. Letters
/// compose left to right (index 0 applied first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub edge: CoherenceEdge,
    pub inverse: bool,
}

impl Letter {
    pub fn forward(edge: CoherenceEdge) -> Self {
        Letter { edge, inverse: false }
    }

    pub fn backward(edge: CoherenceEdge) -> Self {
        Letter { edge, inverse: true }
    }

    pub fn from(&self) -> &FaceTuple {
        if self.inverse {
            &self.edge.target
        } else {
            &self.edge.source
        }
    }

    pub fn to(&self) -> &FaceTuple {
        if self.inverse {
            &self.edge.source
        } else {
            &self.edge.target
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter { edge: self.edge.clone(), inverse: !self.inverse }
    }
}

/// A composable word of letters between two coface-path tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohererWord {
    pub enhanced: bool,
    pub source: FaceTuple,
    pub target: FaceTuple,
    pub letters: Vec<Letter>,
}

impl CohererWord {
    pub fn new(
        enhanced: bool,
        source: FaceTuple,
        target: FaceTuple,
        letters: Vec<Letter>,
    ) -> Result<Self> {
        let w = CohererWord { enhanced, source, target, letters };
        w.validate()?;
        Ok(w)
    }

    pub fn empty(enhanced: bool, at: FaceTuple) -> Self {
        CohererWord { enhanced, source: at.clone(), target: at, letters: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        let mut cur = &self.source;
        for (i, l) in self.letters.iter().enumerate() {
            if !self.enhanced && matches!(l.edge.kind, EdgeKind::Phi) {
                return Err(Error::InvalidArgument(format!(
                    "phi letter at {i} in a non-enhanced word"
                )));
            }
            if l.from() != cur {
                return Err(Error::InvalidArgument(format!(
                    "letter {i} starts at {:?}, expected {:?}",
                    l.from(),
                    cur
                )));
            }
            cur = l.to();
        }
        if cur != &self.target {
            return Err(Error::InvalidArgument(format!(
                "word ends at {cur:?}, expected {:?}",
                self.target
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_parallel_to(&self, other: &CohererWord) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.enhanced == other.enhanced
    }
}

/// The relation kind justifying a replacement step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RewriteRule {
    Hexagon,
    Interchange,
    PhiHexagon,
}

/// One rewrite step. Replacement steps carry both sides so a trace can be
/// replayed and reversed without further context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum TraceStep {
    CancelPair { pos: usize, first: Letter, second: Letter },
    InsertPair { pos: usize, first: Letter, second: Letter },
    Relation { pos: usize, rule: RewriteRule, lhs: Vec<Letter>, rhs: Vec<Letter> },
}

impl TraceStep {
    pub fn reversed(&self) -> TraceStep {
        match self {
            TraceStep::CancelPair { pos, first, second } => TraceStep::InsertPair {
                pos: *pos,
                first: first.clone(),
                second: second.clone(),
            },
            TraceStep::InsertPair { pos, first, second } => TraceStep::CancelPair {
                pos: *pos,
                first: first.clone(),
                second: second.clone(),
            },
            TraceStep::Relation { pos, rule, lhs, rhs } => TraceStep::Relation {
                pos: *pos,
                rule: *rule,
                lhs: rhs.clone(),
                rhs: lhs.clone(),
            },
        }
    }

    fn shifted(mut self, by: usize) -> TraceStep {
        match &mut self {
            TraceStep::CancelPair { pos, .. }
            | TraceStep::InsertPair { pos, .. }
            | TraceStep::Relation { pos, .. } => *pos += by,
        }
        self
    }
}

/// A move template at a vertex, used to rebuild relation instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Move {
    Lat(usize),
    Phi,
}

fn edge_move(e: &CoherenceEdge) -> Move {
    match e.kind {
        EdgeKind::Coherer { laterality, .. } => Move::Lat(laterality),
        EdgeKind::Phi => Move::Phi,
    }
}

fn apply_move(v: &FaceTuple, m: Move) -> Option<CoherenceEdge> {
    match m {
        Move::Lat(n) => CoherenceEdge::coherer(v, n),
        Move::Phi => CoherenceEdge::phi(v),
    }
}

fn replay_moves(start: &FaceTuple, moves: &[Move]) -> Result<Vec<CoherenceEdge>> {
    let mut cur = start.clone();
    let mut edges = Vec::with_capacity(moves.len());
    for &m in moves {
        let e = apply_move(&cur, m).ok_or_else(|| {
            Error::Invalid(format!("relation replay: move {m:?} unavailable at {cur:?}"))
        })?;
        cur = e.target.clone();
        edges.push(e);
    }
    Ok(edges)
}

/// The unique local relation whose two sides start with the distinct forward
/// edges `e` and `g` at a common vertex. Returns (side through e, side
/// through g, rule); both sides are directed and parallel.
pub fn relation_instance(
    e: &CoherenceEdge,
    g: &CoherenceEdge,
) -> Result<(Vec<CoherenceEdge>, Vec<CoherenceEdge>, RewriteRule)> {
    if e.source != g.source {
        return Err(Error::InvalidArgument("relation edges must share their source".into()));
    }
    if e == g {
        return Err(Error::InvalidArgument("relation needs two distinct edges".into()));
    }
    let a = &e.source;
    let (me, mg) = (edge_move(e), edge_move(g));
    let (rule, side_e_moves, side_g_moves): (RewriteRule, Vec<Move>, Vec<Move>) = match (me, mg) {
        (Move::Lat(p), Move::Lat(q)) => {
            debug_assert_ne!(p, q);
            if p.abs_diff(q) == 1 {
                (
                    RewriteRule::Hexagon,
                    vec![Move::Lat(p), Move::Lat(q), Move::Lat(p)],
                    vec![Move::Lat(q), Move::Lat(p), Move::Lat(q)],
                )
            } else {
                (
                    RewriteRule::Interchange,
                    vec![Move::Lat(p), Move::Lat(q)],
                    vec![Move::Lat(q), Move::Lat(p)],
                )
            }
        }
        (Move::Phi, Move::Lat(q)) => phi_relation(q, true),
        (Move::Lat(q), Move::Phi) => phi_relation(q, false),
        (Move::Phi, Move::Phi) => unreachable!("distinct phi edges at one vertex"),
    };
    let side_e = replay_moves(a, &side_e_moves)?;
    let side_g = replay_moves(a, &side_g_moves)?;
    if side_e.last().unwrap().target != side_g.last().unwrap().target {
        return Err(Error::Invalid("relation sides do not converge".into()));
    }
    debug_assert_eq!(&side_e[0], e);
    debug_assert_eq!(&side_g[0], g);
    Ok((side_e, side_g, rule))
}

fn phi_relation(q: usize, phi_first: bool) -> (RewriteRule, Vec<Move>, Vec<Move>) {
    let (rule, phi_side, lat_side) = if q == 1 {
        (
            RewriteRule::PhiHexagon,
            vec![Move::Phi, Move::Lat(1), Move::Phi],
            vec![Move::Lat(1), Move::Phi, Move::Lat(1)],
        )
    } else {
        (
            RewriteRule::Interchange,
            vec![Move::Phi, Move::Lat(q)],
            vec![Move::Lat(q), Move::Phi],
        )
    };
    if phi_first {
        (rule, phi_side, lat_side)
    } else {
        (rule, lat_side, phi_side)
    }
}

/// Apply one step to a letter sequence, validating it completely.
pub fn apply_step(letters: &mut Vec<Letter>, step: &TraceStep) -> Result<()> {
    match step {
        TraceStep::CancelPair { pos, first, second } => {
            if letters.len() < pos + 2 {
                return Err(Error::Invalid("cancel out of range".into()));
            }
            if &letters[*pos] != first || &letters[pos + 1] != second {
                return Err(Error::Invalid("cancel letters do not match the word".into()));
            }
            if &first.inverted() != second {
                return Err(Error::Invalid("cancelled letters are not mutually inverse".into()));
            }
            letters.drain(*pos..pos + 2);
        }
        TraceStep::InsertPair { pos, first, second } => {
            if *pos > letters.len() {
                return Err(Error::Invalid("insert out of range".into()));
            }
            if &first.inverted() != second {
                return Err(Error::Invalid("inserted letters are not mutually inverse".into()));
            }
            letters.insert(*pos, second.clone());
            letters.insert(*pos, first.clone());
        }
        TraceStep::Relation { pos, rule, lhs, rhs } => {
            if letters.len() < pos + lhs.len() {
                return Err(Error::Invalid("relation out of range".into()));
            }
            if &letters[*pos..pos + lhs.len()] != lhs.as_slice() {
                return Err(Error::Invalid("relation lhs does not match the word".into()));
            }
            if lhs.iter().chain(rhs).any(|l| l.inverse) {
                return Err(Error::Invalid("relation sides must be directed".into()));
            }
            let (se, sg, r) = relation_instance(&lhs[0].edge, &rhs[0].edge)?;
            let lhs_edges: Vec<CoherenceEdge> = lhs.iter().map(|l| l.edge.clone()).collect();
            let rhs_edges: Vec<CoherenceEdge> = rhs.iter().map(|l| l.edge.clone()).collect();
            if se != lhs_edges || sg != rhs_edges || r != *rule {
                return Err(Error::Invalid("relation step is not a relation instance".into()));
            }
            letters.splice(*pos..pos + lhs.len(), rhs.iter().cloned());
        }
    }
    Ok(())
}

/// Replay a trace from a word, validating every step; returns the final word.
pub fn replay_trace(word: &CohererWord, steps: &[TraceStep]) -> Result<CohererWord> {
    word.validate()?;
    let mut letters = word.letters.clone();
    for step in steps {
        apply_step(&mut letters, step)?;
    }
    let out = CohererWord {
        enhanced: word.enhanced,
        source: word.source.clone(),
        target: word.target.clone(),
        letters,
    };
    out.validate()?;
    Ok(out)
}

/// The canonical word between two tuples: greedy descents from both endpoints
/// to the component sink, the second leg inverted, then freely reduced. In
/// the non-enhanced case returns `None` when the tuples lie in different
/// components.
pub fn canonical_word(
    from: &FaceTuple,
    to: &FaceTuple,
    enhanced: bool,
) -> Result<Option<CohererWord>> {
    if from.s != to.s || from.k() != to.k() {
        return Err(Error::InvalidArgument("endpoints of different shapes".into()));
    }
    if enhanced && from.s != 1 {
        return Err(Error::InvalidArgument("enhanced words require s = 1".into()));
    }
    if !enhanced && from.component_out_vertex() != to.component_out_vertex() {
        return Ok(None);
    }
    let down_from = greedy_descent(from, enhanced);
    let down_to = greedy_descent(to, enhanced);
    let mut a = down_from.len();
    let mut b = down_to.len();
    while a > 0 && b > 0 && down_from[a - 1] == down_to[b - 1] {
        a -= 1;
        b -= 1;
    }
    let mut letters: Vec<Letter> = down_from[..a].iter().cloned().map(Letter::forward).collect();
    letters.extend(down_to[..b].iter().rev().cloned().map(Letter::backward));
    Ok(Some(CohererWord { enhanced, source: from.clone(), target: to.clone(), letters }))
}

/// Normalization result: the canonical word plus the rewrite trace reaching it.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub canonical: CohererWord,
    pub steps: Vec<TraceStep>,
}

/// Normalize a word to the canonical form of its endpoints, recording every
/// rewrite step. The trace is re-validated by replaying before returning; a
/// normalization that failed to reach the canonical form would be a coherence
/// counterexample and surfaces as an error.
pub fn normalize(word: &CohererWord) -> Result<Normalization> {
    word.validate()?;
    let enhanced = word.enhanced;
    let mut letters = word.letters.clone();
    let mut steps: Vec<TraceStep> = Vec::new();

    free_reduce(&mut letters, &mut steps)?;

    // seed the suffix with the unreduced canonical loop at the target:
    // D(target) followed by its inverse
    let base = letters.len();
    let down_target = greedy_descent(&word.target, enhanced);
    for (j, e) in down_target.iter().enumerate() {
        let step = TraceStep::InsertPair {
            pos: base + j,
            first: Letter::forward(e.clone()),
            second: Letter::backward(e.clone()),
        };
        apply_step(&mut letters, &step)?;
        steps.push(step);
    }

    // fold the original letters into the canonical descent, right to left;
    // the invariant is that positions [i+1 ..] spell D(u_{i+1}) followed by
    // the inverted descent of the target
    for i in (0..base).rev() {
        let l = letters[i].clone();
        if l.inverse {
            let e = l.edge.clone();
            reverse_down_stitch(&mut letters, &mut steps, i + 1, &e, enhanced)?;
            let step = TraceStep::CancelPair {
                pos: i,
                first: l.clone(),
                second: letters[i + 1].clone(),
            };
            apply_step(&mut letters, &step)?;
            steps.push(step);
        } else {
            down_stitch(&mut letters, &mut steps, i, enhanced)?;
        }
    }

    free_reduce(&mut letters, &mut steps)?;

    let canonical = CohererWord {
        enhanced,
        source: word.source.clone(),
        target: word.target.clone(),
        letters,
    };
    canonical.validate()?;
    let expect = canonical_word(&word.source, &word.target, enhanced)?
        .expect("endpoints are connected by the input word");
    if canonical != expect {
        return Err(Error::Invalid(
            "normalization did not reach the canonical form (coherence counterexample)".into(),
        ));
    }
    let replayed = replay_trace(word, &steps)?;
    if replayed != canonical {
        return Err(Error::Invalid("trace replay does not match normalization".into()));
    }
    Ok(Normalization { canonical, steps })
}

fn free_reduce(letters: &mut Vec<Letter>, steps: &mut Vec<TraceStep>) -> Result<()> {
    loop {
        let Some(pos) =
            (0..letters.len().saturating_sub(1)).find(|&i| letters[i].inverted() == letters[i + 1])
        else {
            return Ok(());
        };
        let step = TraceStep::CancelPair {
            pos,
            first: letters[pos].clone(),
            second: letters[pos + 1].clone(),
        };
        apply_step(letters, &step)?;
        steps.push(step);
    }
}

/// Turn `[e] D(target e)` at `pos` into `D(source e)`, recording steps.
fn down_stitch(
    letters: &mut Vec<Letter>,
    steps: &mut Vec<TraceStep>,
    pos: usize,
    enhanced: bool,
) -> Result<()> {
    debug_assert!(!letters[pos].inverse);
    let e = letters[pos].edge.clone();
    let a = e.source.clone();
    let g = greedy_step(&a, enhanced)
        .ok_or_else(|| Error::Invalid(format!("no forward step at {a:?}")))?;
    if g == e {
        return Ok(());
    }
    let (side_e, side_g, rule) = relation_instance(&e, &g)?;
    // expand the descent below e so the word spells the whole e-side
    for j in 1..side_e.len() {
        reverse_down_stitch(letters, steps, pos + j, &side_e[j], enhanced)?;
    }
    let step = TraceStep::Relation {
        pos,
        rule,
        lhs: side_e.iter().cloned().map(Letter::forward).collect(),
        rhs: side_g.iter().cloned().map(Letter::forward).collect(),
    };
    apply_step(letters, &step)?;
    steps.push(step);
    // fold the tail of the g-side back into greedy descents
    for j in (1..side_g.len()).rev() {
        down_stitch(letters, steps, pos + j, enhanced)?;
    }
    Ok(())
}

/// Inverse of `down_stitch`: turn `D(b)` at `pos` into `[x] D(target x)` for a
/// chosen forward edge `x` out of `b`.
fn reverse_down_stitch(
    letters: &mut Vec<Letter>,
    steps: &mut Vec<TraceStep>,
    pos: usize,
    x: &CoherenceEdge,
    enhanced: bool,
) -> Result<()> {
    let b = x.source.clone();
    // simulate the forward stitch on a scratch word [x] D(target x)
    let mut scratch: Vec<Letter> = vec![Letter::forward(x.clone())];
    scratch.extend(greedy_descent(&x.target, enhanced).into_iter().map(Letter::forward));
    let mut scratch_steps = Vec::new();
    down_stitch(&mut scratch, &mut scratch_steps, 0, enhanced)?;
    // scratch now spells D(b); the live word must match it at pos
    let len = scratch.len();
    if letters.len() < pos + len || letters[pos..pos + len] != scratch[..] {
        return Err(Error::Invalid(format!("descent mismatch at {b:?}")));
    }
    for step in scratch_steps.iter().rev() {
        let rev = step.reversed().shifted(pos);
        apply_step(letters, &rev)?;
        steps.push(rev);
    }
    Ok(())
}

/// Equality certificate for two parallel words: a validated trace from the
/// first word to the second, through the shared canonical form.
#[derive(Clone, Debug)]
pub struct EqualityTrace {
    pub canonical: CohererWord,
    pub steps: Vec<TraceStep>,
}

/// Decide equality of two parallel words by normalizing both to the canonical
/// form. By coherence this always succeeds; any failure surfaces as an error
/// carrying the offending state (a counterexample, never expected).
pub fn words_equal(w1: &CohererWord, w2: &CohererWord) -> Result<EqualityTrace> {
    if !w1.is_parallel_to(w2) {
        return Err(Error::InvalidArgument("words are not parallel".into()));
    }
    let n1 = normalize(w1)?;
    let n2 = normalize(w2)?;
    if n1.canonical != n2.canonical {
        return Err(Error::Invalid("parallel words normalize differently".into()));
    }
    let mut steps = n1.steps;
    steps.extend(n2.steps.iter().rev().map(|s| s.reversed()));
    let replayed = replay_trace(w1, &steps)?;
    if replayed != *w2 {
        return Err(Error::Invalid("combined trace does not reach the second word".into()));
    }
    Ok(EqualityTrace { canonical: n1.canonical, steps })
}

/// All backward (inverse) moves available at a vertex.
pub fn backward_edges(v: &FaceTuple, enhanced: bool) -> Vec<CoherenceEdge> {
    let mut out = Vec::new();
    if enhanced && v.s == 1 && v.entries[0] == 0 {
        let mut w = v.entries.clone();
        w[0] = 1;
        let src = FaceTuple::new(v.s, w).unwrap();
        out.push(CoherenceEdge::phi(&src).unwrap());
    }
    for p in 1..=v.k() {
        if v.entries[p - 1] >= v.entries[p] {
            let mut w = v.entries.clone();
            w[p - 1] = v.entries[p];
            w[p] = v.entries[p - 1] + 1;
            if let Ok(src) = FaceTuple::new(v.s, w) {
                if let Some(e) = CoherenceEdge::coherer(&src, p) {
                    debug_assert_eq!(&e.target, v);
                    out.push(e);
                }
            }
        }
    }
    out
}

/// A random walk word from `start` with at most `len` letters.
pub fn random_word(
    start: &FaceTuple,
    enhanced: bool,
    len: usize,
    rng: &mut impl rand::Rng,
) -> CohererWord {
    let mut letters = Vec::new();
    let mut cur = start.clone();
    for _ in 0..len {
        let mut options: Vec<Letter> = crate::graph::forward_edges(&cur, enhanced)
            .into_iter()
            .map(Letter::forward)
            .collect();
        options.extend(backward_edges(&cur, enhanced).into_iter().map(Letter::backward));
        if options.is_empty() {
            break;
        }
        let choice = options[rng.gen_range(0..options.len())].clone();
        cur = choice.to().clone();
        letters.push(choice);
    }
    CohererWord { enhanced, source: start.clone(), target: cur, letters }
}

/// A random pair of parallel words from `start`: a random walk, and a second
/// random walk rerouted to the first one's endpoint through the canonical
/// word.
pub fn random_parallel_pair(
    start: &FaceTuple,
    enhanced: bool,
    len: usize,
    rng: &mut impl rand::Rng,
) -> Result<(CohererWord, CohererWord)> {
    let w1 = random_word(start, enhanced, len, rng);
    let mut w2 = random_word(start, enhanced, len / 2, rng);
    let reroute =
        canonical_word(&w2.target.clone(), &w1.target, enhanced)?.expect("same component");
    w2.letters.extend(reroute.letters);
    w2.target = w1.target.clone();
    w2.validate()?;
    Ok((w1, w2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn ft(s: usize, entries: &[usize]) -> FaceTuple {
        FaceTuple::new(s, entries.to_vec()).unwrap()
    }

    #[test]
    fn canonical_word_trivial_cases() {
        let v = ft(1, &[0, 1, 2]);
        let w = canonical_word(&v, &v, false).unwrap().unwrap();
        assert!(w.is_empty());
        let u = ft(1, &[0, 1]);
        let t = ft(1, &[0, 0]);
        let w = canonical_word(&u, &t, false).unwrap().unwrap();
        assert_eq!(w.len(), 1);
        assert!(!w.letters[0].inverse);
    }

    #[test]
    fn canonical_word_absent_across_components() {
        let u = ft(1, &[1, 1]);
        let t = ft(1, &[0, 0]);
        assert!(canonical_word(&u, &t, false).unwrap().is_none());
        assert!(canonical_word(&u, &t, true).unwrap().is_some());
    }

    #[test]
    fn hexagon_sides_are_equal() {
        let a = ft(1, &[0, 1, 2]);
        let e = CoherenceEdge::coherer(&a, 1).unwrap();
        let g = CoherenceEdge::coherer(&a, 2).unwrap();
        let (se, sg, rule) = relation_instance(&e, &g).unwrap();
        assert_eq!(rule, RewriteRule::Hexagon);
        assert_eq!((se.len(), sg.len()), (3, 3));
        let w1 = CohererWord::new(
            false,
            a.clone(),
            se.last().unwrap().target.clone(),
            se.into_iter().map(Letter::forward).collect(),
        )
        .unwrap();
        let w2 = CohererWord::new(
            false,
            a.clone(),
            sg.last().unwrap().target.clone(),
            sg.into_iter().map(Letter::forward).collect(),
        )
        .unwrap();
        let eq = words_equal(&w1, &w2).unwrap();
        assert!(eq.steps.iter().any(|s| matches!(s, TraceStep::Relation { .. })));
    }

    #[test]
    fn interchange_instance() {
        let a = ft(1, &[1, 2, 0, 4]);
        let e = CoherenceEdge::coherer(&a, 1).unwrap();
        let g = CoherenceEdge::coherer(&a, 3).unwrap();
        let (se, sg, rule) = relation_instance(&e, &g).unwrap();
        assert_eq!(rule, RewriteRule::Interchange);
        assert_eq!((se.len(), sg.len()), (2, 2));
        assert_eq!(se.last().unwrap().target, sg.last().unwrap().target);
    }

    #[test]
    fn phi_hexagon_instance() {
        let a = ft(1, &[1, 2]);
        let e = CoherenceEdge::phi(&a).unwrap();
        let g = CoherenceEdge::coherer(&a, 1).unwrap();
        let (se, sg, rule) = relation_instance(&e, &g).unwrap();
        assert_eq!(rule, RewriteRule::PhiHexagon);
        assert_eq!((se.len(), sg.len()), (3, 3));
        assert_eq!(se.last().unwrap().target.entries, vec![0, 0]);
        assert_eq!(sg.last().unwrap().target.entries, vec![0, 0]);
    }

    #[test]
    fn normalize_boundary_paths_of_a_component() {
        let g = crate::graph::build(1, 3, false).unwrap();
        let from = ft(1, &[0, 2, 3, 4]);
        let to = ft(1, &[1, 1, 1, 0]);
        let paths = crate::graph::directed_paths(&g, &from, &to, 10_000);
        assert!(paths.len() >= 2);
        let words: Vec<CohererWord> = paths
            .iter()
            .map(|p| {
                CohererWord::new(
                    false,
                    from.clone(),
                    to.clone(),
                    p.iter().cloned().map(Letter::forward).collect(),
                )
                .unwrap()
            })
            .collect();
        for w in &words[1..] {
            words_equal(&words[0], w).unwrap();
        }
    }

    #[test]
    fn fuzz_parallel_words_normalize_equal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for k in 2..=3 {
            for enhanced in [false, true] {
                let g = crate::graph::build(1, k, enhanced).unwrap();
                for _ in 0..60 {
                    let start =
                        g.vertices[rand::Rng::gen_range(&mut rng, 0..g.vertices.len())].clone();
                    let (w1, w2) = random_parallel_pair(&start, enhanced, 12, &mut rng).unwrap();
                    let eq = words_equal(&w1, &w2).unwrap();
                    assert_eq!(eq.canonical.source, w1.source);
                    assert_eq!(eq.canonical.target, w1.target);
                }
            }
        }
    }

    #[test]
    fn non_parallel_words_rejected() {
        let u = ft(1, &[0, 1]);
        let t = ft(1, &[0, 0]);
        let w1 = canonical_word(&u, &t, false).unwrap().unwrap();
        let w2 = CohererWord::empty(false, u.clone());
        assert!(matches!(words_equal(&w1, &w2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn rewrite_preserves_endpoints_step_by_step() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let start = ft(1, &[1, 2, 3]);
        let w = random_word(&start, true, 10, &mut rng);
        let n = normalize(&w).unwrap();
        let mut letters = w.letters.clone();
        for step in &n.steps {
            apply_step(&mut letters, step).unwrap();
            CohererWord {
                enhanced: true,
                source: w.source.clone(),
                target: w.target.clone(),
                letters: letters.clone(),
            }
            .validate()
            .unwrap();
        }
        assert_eq!(letters, n.canonical.letters);
    }

    #[test]
    fn fuzz_words_across_s2_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let g = crate::graph::build(2, 3, false).unwrap();
        for _ in 0..40 {
            let start = g.vertices[rand::Rng::gen_range(&mut rng, 0..g.vertices.len())].clone();
            let (w1, w2) = random_parallel_pair(&start, false, 10, &mut rng).unwrap();
            words_equal(&w1, &w2).unwrap();
        }
    }
}
