//! Orbital Schreier graphs of the affine action.
//!
//! Vertices are orbit points of the origin, edges `p → g·p` are stored for the
//! positive generators only; an inverse letter walks an edge backwards. Over
//! `(ℤ/qℤ)²` the orbit is finite and the graph is built completely. Over `ℤ²`
//! only a ball around the origin is explored, and each vertex records whether
//! its whole neighbourhood was seen.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::action::step;
use crate::error::{Error, Result};
use crate::linear::Vec2;
use crate::word::{loop_word, Generator, Letter, Word};

/// Largest ball radius accepted by [`OrbitalGraph::build_ball`]; the ball has
/// roughly `3^depth` vertices.
pub const MAX_BALL_DEPTH: usize = 16;

#[derive(Debug, Clone)]
pub struct OrbitalGraph {
    modulus: Option<u64>,
    vertices: Vec<Vec2>,
    index: HashMap<Vec2, usize>,
    base: usize,
    out: Vec<[Option<usize>; 2]>,
    inc: Vec<[Option<usize>; 2]>,
    complete: Vec<bool>,
}

impl PartialEq for OrbitalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.vertices == other.vertices
            && self.base == other.base
            && self.out == other.out
            && self.complete == other.complete
    }
}

impl Eq for OrbitalGraph {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoreKind {
    Exact,
    CertifiedLowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreReport {
    pub kind: CoreKind,
    pub core_vertices: BTreeSet<usize>,
    pub witness: Option<Word>,
}

impl CoreReport {
    pub fn len(&self) -> usize {
        self.core_vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.core_vertices.is_empty()
    }
}

impl OrbitalGraph {
    /// Orbit of `(0, 0)` in `(ℤ/qℤ)²` under `ᾱ`, `β̄` and their inverses.
    pub fn build_mod_q(q: u64) -> Result<OrbitalGraph> {
        if q < 2 {
            return Err(Error::InvalidModulus(q as i64));
        }
        Ok(OrbitalGraph::explore(Vec2::residue(0, 0, q), None))
    }

    /// All points reachable from the origin of `ℤ²` by words of length at most `depth`.
    pub fn build_ball(depth: usize) -> Result<OrbitalGraph> {
        if depth > MAX_BALL_DEPTH {
            return Err(Error::DepthTooLarge {
                depth,
                limit: MAX_BALL_DEPTH,
            });
        }
        Ok(OrbitalGraph::explore(Vec2::zero(), Some(depth)))
    }

    fn explore(origin: Vec2, depth: Option<usize>) -> OrbitalGraph {
        let modulus = origin.modulus();
        let mut vertices = vec![origin.clone()];
        let mut index = HashMap::from([(origin, 0)]);
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        while let Some((v, dist)) = queue.pop_front() {
            if depth.is_some_and(|d| dist >= d) {
                continue;
            }
            for letter in Letter::ALL {
                let image = step(letter, &vertices[v]);
                if !index.contains_key(&image) {
                    index.insert(image.clone(), vertices.len());
                    queue.push_back((vertices.len(), dist + 1));
                    vertices.push(image);
                }
            }
        }
        let n = vertices.len();
        let mut out = vec![[None; 2]; n];
        let mut inc = vec![[None; 2]; n];
        for (v, p) in vertices.iter().enumerate() {
            for g in Generator::ALL {
                if let Some(&t) = index.get(&step(Letter::new(g, false), p)) {
                    out[v][g.index()] = Some(t);
                    inc[t][g.index()] = Some(v);
                }
            }
        }
        let complete = (0..n)
            .map(|v| out[v].iter().chain(inc[v].iter()).all(Option::is_some))
            .collect();
        OrbitalGraph {
            modulus,
            vertices,
            index,
            base: 0,
            out,
            inc,
            complete,
        }
    }

    /// Assembles a graph from explicit edges `(from, generator, to)` without
    /// consulting the action. `explored[v]` says that every edge at `v` is
    /// listed. Used for imports and synthetic test graphs.
    pub fn from_parts(
        modulus: Option<u64>,
        vertices: Vec<Vec2>,
        base: usize,
        edges: &[(usize, Generator, usize)],
        explored: Vec<bool>,
    ) -> Result<OrbitalGraph> {
        let n = vertices.len();
        if base >= n {
            return Err(Error::GraphFormat(format!("base {base} out of range")));
        }
        if explored.len() != n {
            return Err(Error::GraphFormat("one completeness flag per vertex".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if v.modulus() != modulus {
                return Err(Error::GraphFormat(format!("vertex {i} has the wrong modulus")));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::GraphFormat(format!("duplicate vertex {v}")));
            }
        }
        let mut out = vec![[None; 2]; n];
        let mut inc = vec![[None; 2]; n];
        for &(from, g, to) in edges {
            if from >= n || to >= n {
                return Err(Error::GraphFormat(format!("edge {from} -> {to} out of range")));
            }
            let slot = g.index();
            if out[from][slot].replace(to).is_some() || inc[to][slot].replace(from).is_some() {
                return Err(Error::GraphFormat(format!(
                    "two {} edges at one end of {from} -> {to}",
                    g.name()
                )));
            }
        }
        Ok(OrbitalGraph {
            modulus,
            vertices,
            index,
            base,
            out,
            inc,
            complete: explored,
        })
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> &Vec2 {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn index_of(&self, p: &Vec2) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_complete(&self, v: usize) -> bool {
        self.complete[v]
    }

    pub fn incomplete_count(&self) -> usize {
        self.complete.iter().filter(|c| !**c).count()
    }

    pub fn is_fully_complete(&self) -> bool {
        self.incomplete_count() == 0
    }

    fn require_complete(&self) -> Result<()> {
        match self.incomplete_count() {
            0 => Ok(()),
            k => Err(Error::IncompleteGraph(k)),
        }
    }

    /// Positive edges `(from, generator, to)` in vertex order, `U` before `V`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, Generator, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(v, slots)| {
            Generator::ALL
                .into_iter()
                .filter_map(move |g| slots[g.index()].map(|t| (v, g, t)))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Neighbour of `v` along one letter, if that edge was explored.
    pub fn follow(&self, v: usize, letter: Letter) -> Option<usize> {
        let slot = letter.generator.index();
        if letter.inverted {
            self.inc[v][slot]
        } else {
            self.out[v][slot]
        }
    }

    /// Endpoint of the path labelled `w` from `start`, reading the rightmost
    /// letter first; `None` once the path leaves the explored region.
    pub fn trace(&self, w: &Word, start: usize) -> Option<usize> {
        w.letters()
            .iter()
            .rev()
            .try_fold(start, |v, l| self.follow(v, *l))
    }

    /// Whether `w` labels a loop at the base vertex, i.e. lies in the stabilizer.
    pub fn is_loop_at_base(&self, w: &Word) -> Result<bool> {
        self.require_complete()?;
        Ok(self.trace(w, self.base) == Some(self.base))
    }

    /// Recomputes the action along every stored edge.
    pub fn audit_edges(&self) -> bool {
        self.edges()
            .all(|(v, g, t)| step(Letter::new(g, false), &self.vertices[v]) == self.vertices[t])
    }

    /// Undirected degree with each generator edge counted once per endpoint,
    /// so a loop contributes two.
    pub fn degree(&self, v: usize) -> usize {
        self.out[v].iter().chain(self.inc[v].iter()).flatten().count()
    }

    /// Stallings core: repeatedly deletes vertices of degree at most one.
    /// The core is unbased, so the base vertex may be pruned too.
    pub fn core_exact(&self) -> Result<CoreReport> {
        self.require_complete()?;
        let n = self.vertex_count();
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for w in self.out[v].iter().chain(self.inc[v].iter()).flatten() {
                let w = *w;
                if w != v && alive[w] {
                    degree[w] -= 1;
                    if degree[w] <= 1 {
                        stack.push(w);
                    }
                }
            }
        }
        Ok(CoreReport {
            kind: CoreKind::Exact,
            core_vertices: (0..n).filter(|&v| alive[v]).collect(),
            witness: None,
        })
    }

    /// Vertices certified to lie in the core: the path labelled `witness`
    /// from `v` returns to `v` and only visits explored vertices. The witness
    /// must be cyclically reduced, so the closed path is reduced at every
    /// point, including at `v`.
    pub fn certified_core(&self, witness: &Word) -> Result<CoreReport> {
        if witness.is_empty() {
            return Err(Error::EmptyWitness);
        }
        if !witness.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(witness.to_string()));
        }
        let core_vertices = (0..self.vertex_count())
            .filter(|&v| self.closes_inside(witness, v))
            .collect();
        Ok(CoreReport {
            kind: CoreKind::CertifiedLowerBound,
            core_vertices,
            witness: Some(witness.clone()),
        })
    }

    fn closes_inside(&self, witness: &Word, start: usize) -> bool {
        if !self.complete[start] {
            return false;
        }
        let mut v = start;
        for l in witness.letters().iter().rev() {
            match self.follow(v, *l) {
                Some(t) if self.complete[t] => v = t,
                _ => return false,
            }
        }
        v == start
    }

    /// Certified core with the default witness `(U⁻¹V)²`.
    pub fn certified_core_default(&self) -> Result<CoreReport> {
        self.certified_core(&loop_word())
    }

    /// The subgraph on `keep`, with edges between kept vertices only.
    /// The base moves to the first kept vertex when it is dropped.
    pub fn induced_subgraph(&self, keep: &BTreeSet<usize>) -> Result<OrbitalGraph> {
        if keep.is_empty() {
            return Err(Error::Parameter("induced subgraph needs a vertex".into()));
        }
        let renumber: HashMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges: Vec<_> = self
            .edges()
            .filter_map(|(v, g, t)| Some((*renumber.get(&v)?, g, *renumber.get(&t)?)))
            .collect();
        let base = renumber.get(&self.base).copied().unwrap_or(0);
        let explored = keep.iter().map(|&v| self.complete[v]).collect();
        OrbitalGraph::from_parts(self.modulus, vertices, base, &edges, explored)
    }

    /// Breadth-first spanning tree from the base, neighbours taken in letter
    /// order `U, V, U⁻¹, V⁻¹`. Returns the tree word of each vertex (it moves
    /// the base point there) and the set of tree edges as `(from, generator)`.
    pub fn spanning_tree(&self) -> (Vec<Word>, BTreeSet<(usize, Generator)>) {
        let n = self.vertex_count();
        let mut words: Vec<Option<Word>> = vec![None; n];
        let mut tree = BTreeSet::new();
        words[self.base] = Some(Word::identity());
        let mut queue = VecDeque::from([self.base]);
        while let Some(v) = queue.pop_front() {
            for letter in Letter::ALL {
                let Some(t) = self.follow(v, letter) else {
                    continue;
                };
                if words[t].is_some() {
                    continue;
                }
                let prefix = Word::letter(letter);
                words[t] = Some(prefix.concat(words[v].as_ref().expect("visited")));
                tree.insert(if letter.inverted {
                    (t, letter.generator)
                } else {
                    (v, letter.generator)
                });
                queue.push_back(t);
            }
        }
        let words = words
            .into_iter()
            .map(|w| w.unwrap_or_default())
            .collect();
        (words, tree)
    }

    /// Schreier generators of the stabilizer of the base point: for every
    /// non-tree edge `p -g-> p'` the word `t_{p'}⁻¹ · g · t_p`.
    pub fn spanning_tree_generators(&self) -> Result<Vec<Word>> {
        self.require_complete()?;
        let (words, tree) = self.spanning_tree();
        Ok(self
            .edges()
            .filter(|(v, g, _)| !tree.contains(&(*v, *g)))
            .map(|(v, g, t)| {
                words[t]
                    .invert()
                    .concat(&Word::letter(Letter::new(g, false)))
                    .concat(&words[v])
            })
            .collect())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph schreier {\n  node [shape=circle];\n");
        for (i, p) in self.vertices.iter().enumerate() {
            let mut attrs = vec![format!("label=\"({},{})\"", p.x, p.y)];
            if i == self.base {
                attrs.push("shape=doublecircle".into());
            }
            if !self.complete[i] {
                attrs.push("style=dashed".into());
            }
            let _ = writeln!(s, "  {i} [{}];", attrs.join(", "));
        }
        for (v, g, t) in self.edges() {
            let color = match g {
                Generator::U => "blue",
                Generator::V => "red",
            };
            let _ = writeln!(s, "  {v} -> {t} [label=\"{}\", color={color}];", g.name());
        }
        s.push_str("}\n");
        s
    }

    pub fn to_document(&self) -> Result<GraphDocument> {
        let coord = |c: &num_bigint::BigInt| {
            i64::try_from(c).map_err(|_| Error::GraphFormat(format!("coordinate {c} exceeds i64")))
        };
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(id, p)| {
                Ok(VertexRecord {
                    id,
                    x: coord(&p.x)?,
                    y: coord(&p.y)?,
                    complete: self.complete[id],
                })
            })
            .collect::<Result<_>>()?;
        let edges = self
            .edges()
            .map(|(from, g, to)| EdgeRecord {
                from,
                to,
                gen: g.name().to_string(),
            })
            .collect();
        Ok(GraphDocument {
            modulus: self.modulus,
            base: self.base,
            vertices,
            edges,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document()?)?)
    }

    pub fn from_document(doc: &GraphDocument) -> Result<OrbitalGraph> {
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        let mut explored = Vec::with_capacity(doc.vertices.len());
        for (i, rec) in doc.vertices.iter().enumerate() {
            if rec.id != i {
                return Err(Error::GraphFormat(format!("vertex ids must be 0..n, got {}", rec.id)));
            }
            let p = Vec2::new(rec.x, rec.y);
            vertices.push(match doc.modulus {
                Some(q) if q >= 2 => p.reduce(q),
                Some(q) => return Err(Error::InvalidModulus(q as i64)),
                None => p,
            });
            explored.push(rec.complete);
        }
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                let g = match e.gen.as_str() {
                    "U" => Generator::U,
                    "V" => Generator::V,
                    other => return Err(Error::GraphFormat(format!("unknown generator {other:?}"))),
                };
                Ok((e.from, g, e.to))
            })
            .collect::<Result<Vec<_>>>()?;
        OrbitalGraph::from_parts(doc.modulus, vertices, doc.base, &edges, explored)
    }

    pub fn from_json(text: &str) -> Result<OrbitalGraph> {
        OrbitalGraph::from_document(&serde_json::from_str(text)?)
    }

    pub fn write_dot<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_dot().as_bytes())?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_json()?.as_bytes())?;
        w.write_all(b"\n")?;
        Ok(())
    }
}

/// JSON interchange form of an [`OrbitalGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub modulus: Option<u64>,
    pub base: usize,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub x: i64,
    pub y: i64,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    pub gen: String,
}
