//! Finite-dimensional modules as quiver representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{Matrix, Rat};
use super::maps::hom_from_projective;
use super::TreeAlgebra;

/// A representation: a vector space per point and a matrix per arrow.
///
/// Instances built by this crate always satisfy the algebra's relations,
/// since they arise from projectives by kernels and quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    dims: Vec<usize>,
    /// `maps[a]` has shape `dims[tgt(a)] x dims[src(a)]`.
    maps: Vec<Matrix>,
}

/// A homomorphism given point by point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    /// `blocks[p]` has shape `target.dims[p] x source.dims[p]`.
    pub blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn zero(source: &Module, target: &Module) -> Self {
        ModuleMap {
            blocks: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Matrix::zeros(t, s))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self
                .blocks
                .iter()
                .zip(&first.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// True iff the map intertwines the arrow actions.
    pub fn commutes(&self, alg: &TreeAlgebra, source: &Module, target: &Module) -> bool {
        alg.arrows().iter().enumerate().all(|(a, ar)| {
            target.maps[a].mul(&self.blocks[ar.src]) == self.blocks[ar.tgt].mul(&source.maps[a])
        })
    }
}

/// Result of a projective cover computation.
#[derive(Debug, Clone)]
pub struct Cover {
    pub module: Module,
    pub map: ModuleMap,
    /// Heads of the summands, in summand order.
    pub heads: Vec<usize>,
}

impl Module {
    pub fn from_parts(dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Module { dims, maps }
    }

    /// Module with the given dimensions and every arrow acting by zero.
    pub fn zero_action(alg: &TreeAlgebra, dims: Vec<usize>) -> Self {
        let maps = alg
            .arrows()
            .iter()
            .map(|ar| Matrix::zeros(dims[ar.tgt], dims[ar.src]))
            .collect();
        Module { dims, maps }
    }

    pub fn zero(alg: &TreeAlgebra) -> Self {
        Self::zero_action(alg, vec![0; alg.num_points()])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Composition factors as points, each repeated by its multiplicity.
    pub fn composition_factors(&self) -> Vec<usize> {
        self.dims
            .iter()
            .enumerate()
            .flat_map(|(p, &d)| std::iter::repeat_n(p, d))
            .collect()
    }

    pub fn direct_sum(alg: &TreeAlgebra, parts: &[&Module]) -> Module {
        let n = alg.num_points();
        let dims: Vec<usize> = (0..n)
            .map(|p| parts.iter().map(|m| m.dims[p]).sum())
            .collect();
        let mut maps = Vec::with_capacity(alg.arrows().len());
        for (a, ar) in alg.arrows().iter().enumerate() {
            let mut block = Matrix::zeros(dims[ar.tgt], dims[ar.src]);
            let (mut r, mut c) = (0, 0);
            for m in parts {
                block.put_block(r, c, &m.maps[a]);
                r += m.dims[ar.tgt];
                c += m.dims[ar.src];
            }
            maps.push(block);
        }
        Module { dims, maps }
    }

    /// Spanning set of the radical at point `p`, as matrix columns.
    fn radical_span(&self, alg: &TreeAlgebra, p: usize) -> Matrix {
        let mut span = Matrix::zeros(self.dims[p], 0);
        for (a, ar) in alg.arrows().iter().enumerate() {
            if ar.tgt == p {
                span = span.hstack(&self.maps[a]);
            }
        }
        span
    }

    /// Coordinate vectors spanning a complement of the radical, point by
    /// point. Generators are standard basis vectors chosen from the left.
    pub fn top_generators(&self, alg: &TreeAlgebra) -> Vec<(usize, Vec<Rat>)> {
        let mut out = Vec::new();
        for p in 0..self.dims.len() {
            let rad = self.radical_span(alg, p);
            let r = rad.cols();
            let ext = rad.hstack(&Matrix::identity(self.dims[p]));
            for c in ext.independent_columns() {
                if c >= r {
                    let mut g = vec![Rat::zero(); self.dims[p]];
                    g[c - r] = Rat::one();
                    out.push((p, g));
                }
            }
        }
        out
    }

    /// Composition factors of the head.
    pub fn head(&self, alg: &TreeAlgebra) -> Vec<usize> {
        self.top_generators(alg)
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// Composition factors of the socle.
    pub fn socle(&self, alg: &TreeAlgebra) -> Vec<usize> {
        let mut out = Vec::new();
        for p in 0..self.dims.len() {
            let mut stacked = Matrix::zeros(0, self.dims[p]).transpose();
            for (a, ar) in alg.arrows().iter().enumerate() {
                if ar.src == p {
                    stacked = stacked.hstack(&self.maps[a].transpose());
                }
            }
            let k = self.dims[p] - stacked.transpose().rank();
            out.extend(std::iter::repeat_n(p, k));
        }
        out
    }

    /// Minimal projective cover: one indecomposable projective per head factor.
    pub fn projective_cover(&self, alg: &TreeAlgebra) -> Cover {
        let gens = self.top_generators(alg);
        let heads: Vec<usize> = gens.iter().map(|(p, _)| *p).collect();
        let parts: Vec<&Module> = heads.iter().map(|&s| &alg.projective(s).module).collect();
        let module = Module::direct_sum(alg, &parts);
        let pieces: Vec<ModuleMap> = gens
            .iter()
            .map(|(s, g)| hom_from_projective(alg, *s, self, g))
            .collect();
        let blocks = (0..self.dims.len())
            .map(|p| {
                pieces
                    .iter()
                    .fold(Matrix::zeros(self.dims[p], 0), |acc, f| {
                        acc.hstack(&f.blocks[p])
                    })
            })
            .collect();
        Cover {
            module,
            map: ModuleMap { blocks },
            heads,
        }
    }

    /// Kernel of `f: self -> _`, with the induced action.
    pub fn kernel(&self, alg: &TreeAlgebra, f: &ModuleMap) -> Module {
        let spaces: Vec<(Matrix, Vec<usize>)> = f.blocks.iter().map(Matrix::nullspace).collect();
        let dims = spaces.iter().map(|(_, free)| free.len()).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, ar)| {
                let image = self.maps[a].mul(&spaces[ar.src].0);
                image.select_rows(&spaces[ar.tgt].1)
            })
            .collect();
        Module { dims, maps }
    }

    /// First syzygy: the kernel of the projective cover.
    pub fn syzygy(&self, alg: &TreeAlgebra) -> Module {
        let cover = self.projective_cover(alg);
        cover.module.kernel(alg, &cover.map)
    }

    /// Quotient by the submodule whose point-wise spans are the columns of
    /// `spans`. The spans must form a submodule.
    pub fn quotient(&self, alg: &TreeAlgebra, spans: &[Matrix]) -> Module {
        struct Frame {
            inv: Matrix,
            sub: usize,
            comp: Vec<usize>,
        }
        let frames: Vec<Frame> = (0..self.dims.len())
            .map(|p| {
                let n = self.dims[p];
                let basis = spans[p].select_cols(&spans[p].independent_columns());
                let sub = basis.cols();
                let ext = basis.hstack(&Matrix::identity(n));
                let comp: Vec<usize> = ext
                    .independent_columns()
                    .into_iter()
                    .filter(|&c| c >= sub)
                    .map(|c| c - sub)
                    .collect();
                let full = basis.hstack(&Matrix::identity(n).select_cols(&comp));
                Frame {
                    inv: full.inverse().expect("basis extension is invertible"),
                    sub,
                    comp,
                }
            })
            .collect();
        let dims = frames.iter().map(|f| f.comp.len()).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, ar)| {
                let (fs, ft) = (&frames[ar.src], &frames[ar.tgt]);
                let moved = self.maps[a].select_cols(&fs.comp);
                let coords = ft.inv.mul(&moved);
                let rows: Vec<usize> = (ft.sub..ft.sub + ft.comp.len()).collect();
                coords.select_rows(&rows)
            })
            .collect();
        Module { dims, maps }
    }

    /// Action of the full cycle around an endpoint of `s` on the space at `s`.
    /// A vector with nonzero image generates a summand isomorphic to `P_s`.
    pub fn cycle_action(&self, alg: &TreeAlgebra, s: usize) -> Matrix {
        let (u, v) = alg.tree().edge(s).ends;
        let w = if alg.walk_length(u) >= 2 { u } else { v };
        let mut acc = Matrix::identity(self.dims[s]);
        for a in alg.cycle_arrows(w, s) {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Removes projective summands; returns the remainder and the heads of
    /// the removed summands.
    pub fn strip_projectives(&self, alg: &TreeAlgebra) -> (Module, Vec<usize>) {
        let mut cur = self.clone();
        let mut removed = Vec::new();
        'outer: loop {
            for s in 0..cur.dims.len() {
                if cur.dims[s] == 0 {
                    continue;
                }
                let c = cur.cycle_action(alg, s);
                if let Some(j) = (0..c.cols()).find(|&j| c.column(j).iter().any(|x| !x.is_zero())) {
                    let mut g = vec![Rat::zero(); cur.dims[s]];
                    g[j] = Rat::one();
                    let f = hom_from_projective(alg, s, &cur, &g);
                    cur = cur.quotient(alg, &f.blocks);
                    removed.push(s);
                    continue 'outer;
                }
            }
            return (cur, removed);
        }
    }

    /// Basis of the space of homomorphisms `self -> other`.
    pub fn hom_basis(&self, alg: &TreeAlgebra, other: &Module) -> Vec<ModuleMap> {
        let n = self.dims.len();
        let mut offset = vec![0; n + 1];
        for p in 0..n {
            offset[p + 1] = offset[p] + other.dims[p] * self.dims[p];
        }
        let unknowns = offset[n];
        if unknowns == 0 {
            return Vec::new();
        }
        let var = |p: usize, i: usize, j: usize| offset[p] + i * self.dims[p] + j;
        let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
        for (a, ar) in alg.arrows().iter().enumerate() {
            let (p, q) = (ar.src, ar.tgt);
            let (na, ma) = (&other.maps[a], &self.maps[a]);
            // other_a * f_p - f_q * self_a = 0, entry (i, j).
            for i in 0..other.dims[q] {
                for j in 0..self.dims[p] {
                    let mut row = Vec::new();
                    for k in 0..other.dims[p] {
                        let c = na.get(i, k);
                        if !c.is_zero() {
                            row.push((var(p, k, j), c.clone()));
                        }
                    }
                    for k in 0..self.dims[q] {
                        let c = ma.get(k, j);
                        if !c.is_zero() {
                            row.push((var(q, i, k), -c));
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
        let mut eqs = Matrix::zeros(rows.len(), unknowns);
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row {
                let cur = eqs.get(r, *c) + x;
                eqs.set(r, *c, cur);
            }
        }
        let (basis, _) = eqs.nullspace();
        (0..basis.cols())
            .map(|k| {
                let blocks = (0..n)
                    .map(|p| {
                        let mut b = Matrix::zeros(other.dims[p], self.dims[p]);
                        for i in 0..other.dims[p] {
                            for j in 0..self.dims[p] {
                                b.set(i, j, basis.get(var(p, i, j), k).clone());
                            }
                        }
                        b
                    })
                    .collect();
                ModuleMap { blocks }
            })
            .collect()
    }

    /// Isomorphism test: a generic combination of a basis of homomorphisms
    /// is invertible iff the modules are isomorphic. Coefficients come from a
    /// fixed-seed generator, so the answer is deterministic; a false negative
    /// needs every trial to hit a proper algebraic subset of the coefficient
    /// space.
    pub fn is_isomorphic(&self, alg: &TreeAlgebra, other: &Module) -> bool {
        if self.dims != other.dims {
            return false;
        }
        if self.dim() == 0 {
            return true;
        }
        let basis = self.hom_basis(alg, other);
        if basis.is_empty() {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e_55ed);
        for _ in 0..4 {
            let coeffs: Vec<Rat> = basis
                .iter()
                .map(|_| Rat::int(rng.gen_range(-1_000_000..=1_000_000)))
                .collect();
            let invertible = (0..self.dims.len()).all(|p| {
                let combo = basis
                    .iter()
                    .zip(&coeffs)
                    .fold(Matrix::zeros(self.dims[p], self.dims[p]), |acc, (h, c)| {
                        acc.add(&h.blocks[p].scale(c))
                    });
                combo.is_invertible()
            });
            if invertible {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn syzygy_of_simple_on_a_line() {
        let a = TreeAlgebra::new(&line2(), 1).unwrap();
        let om = a.simple(0).syzygy(&a);
        // Uniserial S1 over S0.
        assert_eq!(om.dims(), &[1, 1]);
        assert_eq!(om.head(&a), vec![1]);
        assert_eq!(om.socle(&a), vec![0]);
    }

    #[test]
    fn syzygy_period_on_a_line() {
        let a = TreeAlgebra::new(&line2(), 1).unwrap();
        let s0 = a.simple(0);
        let mut m = s0.clone();
        for _ in 0..4 {
            m = m.syzygy(&a);
        }
        assert!(m.is_isomorphic(&a, &s0));
        let mut m2 = s0.clone();
        for _ in 0..2 {
            m2 = m2.syzygy(&a);
        }
        assert!(!m2.is_isomorphic(&a, &s0));
    }

    #[test]
    fn syzygy_of_projective_is_zero() {
        let a = TreeAlgebra::new(&star(3, true), 2).unwrap();
        let p = a.projective(1).module.clone();
        assert!(p.syzygy(&a).is_zero());
    }

    #[test]
    fn strip_removes_projective_summands() {
        let a = TreeAlgebra::new(&star(3, true), 2).unwrap();
        let s = a.simple(2);
        let sum = Module::direct_sum(&a, &[&a.projective(0).module, &s]);
        let (rest, removed) = sum.strip_projectives(&a);
        assert_eq!(removed, vec![0]);
        assert!(rest.is_isomorphic(&a, &s));
    }

    #[test]
    fn hom_dims_match_cartan_entries() {
        let a = TreeAlgebra::new(&star(2, true), 3).unwrap();
        for s in 0..2 {
            for t in 0..2 {
                let h = a
                    .projective(s)
                    .module
                    .hom_basis(&a, &a.projective(t).module);
                assert_eq!(h.len(), a.hom_dim(s, t));
            }
        }
        assert_eq!(a.hom_dim(0, 0), 4);
        assert_eq!(a.hom_dim(0, 1), 3);
    }

    #[test]
    fn head_of_radical_matches_ext1() {
        let a = TreeAlgebra::new(&star(3, false), 1).unwrap();
        for s in 0..3 {
            let mut head = a.simple(s).syzygy(&a).head(&a);
            head.sort();
            let rule: Vec<usize> = (0..3).filter(|&t| a.ext1(s, t) == 1).collect();
            assert_eq!(head, rule);
        }
    }
}
