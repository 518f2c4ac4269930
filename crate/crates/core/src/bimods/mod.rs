//! Diagonal bimodules and the Brauer construction.
//!
//! Modules over a product G x P are the vehicle: Dia(P_gamma) = FG i with G
//! acting by left and P by right translation. Everything here works from
//! explicit action matrices, independently of the idempotent-side corner
//! computations, so agreement between the two multiplicity routes is a real
//! check and not a tautology.

mod brauer_cx;
mod meataxe;
mod multiplicity;

pub use brauer_cx::{brauer_construction, BrauerQuotient};
pub use meataxe::{end_algebra, hom_space, HomData};
pub use multiplicity::{
    dia_is_local, lemma53_check, modules_isomorphic, multiplicity_via_bimodules,
    summand_multiplicity,
};

use crate::blocks::GroupAlgebra;
use crate::error::{PfsError, PfsResult};
use crate::groups::catalog::direct_product;
use crate::groups::{Gel, Group, Subgroup};
use crate::linff::{Fel, Field, FieldMatrix, ZERO};
use std::sync::{Arc, OnceLock};

/// A module over F(G x P), presented by a basis inside FG. The right factor
/// acts through `right_map` (the identity embedding for plain diagonal
/// modules, a twist for the transitive-bimodule tensors).
pub struct GModule {
    group: Arc<Group>,
    field: Arc<Field>,
    right: Subgroup,
    /// For each element of `right` (sorted order), the G-element whose
    /// inverse multiplies on the right.
    right_map: Vec<Gel>,
    product: Arc<Group>,
    /// rref basis rows, FG coordinates.
    basis: FieldMatrix,
    pivots: Vec<usize>,
    /// Cyclic generator, module coordinates.
    generator: Vec<Fel>,
    /// Generators of the product group (pair indices) used for spinning.
    gens: Vec<usize>,
    tag: String,
    mats: Vec<OnceLock<FieldMatrix>>,
    spun: OnceLock<meataxe::SpunData>,
}

impl GModule {
    /// The diagonal module FG.span with right translation by `right`. The
    /// span must be a left ideal closed under the right action and cyclic
    /// over the product, generated by `gen_fg`.
    pub fn from_span(
        fga: &GroupAlgebra,
        right: &Subgroup,
        span_rows: Vec<Vec<Fel>>,
        gen_fg: &[Fel],
        tag: &str,
    ) -> PfsResult<GModule> {
        Self::with_right_map(
            fga,
            right,
            right.elements().to_vec(),
            span_rows,
            gen_fg,
            tag,
        )
    }

    pub fn with_right_map(
        fga: &GroupAlgebra,
        right: &Subgroup,
        right_map: Vec<Gel>,
        span_rows: Vec<Vec<Fel>>,
        gen_fg: &[Fel],
        tag: &str,
    ) -> PfsResult<GModule> {
        let group = fga.group().clone();
        let field = fga.field().clone();
        let (basis, _, pivots) =
            FieldMatrix::from_rows(field.clone(), span_rows).rref();
        let (right_group, _) = right.as_group()?;
        let product = direct_product(&group, &right_group, &format!("{}x{}", group.name(), right_group.name()))?;
        let generator = basis.coords_in_rref_basis(gen_fg, &pivots).ok_or_else(|| {
            PfsError::Inconsistency("designated generator is outside the module".into())
        })?;
        // product-group generators: G-gens on the left, right-factor gens on
        // the right
        let g_gens: Vec<Gel> = if group.generator_labels().is_empty() {
            Subgroup::full(group.clone()).small_generating_set()
        } else {
            group.generator_labels().to_vec()
        };
        let nr = right.order();
        let mut gens: Vec<usize> = g_gens.iter().map(|&g| g as usize * nr).collect();
        let right_local_gens: Vec<usize> = {
            let sg = right.small_generating_set();
            sg.iter()
                .map(|g| right.elements().binary_search(g).unwrap())
                .collect()
        };
        gens.extend(right_local_gens);
        let dim = basis.rows();
        let m = GModule {
            group,
            field,
            right: right.clone(),
            right_map,
            product,
            basis,
            pivots,
            generator,
            gens,
            tag: tag.to_string(),
            mats: (0..0).map(|_| OnceLock::new()).collect(),
            spun: OnceLock::new(),
        };
        let mut m = m;
        m.mats = (0..m.product.order()).map(|_| OnceLock::new()).collect();
        // closure sanity: acting by each generator stays inside the span
        for &h in &m.gens {
            let _ = m.action_matrix(h);
        }
        let _ = dim;
        Ok(m)
    }

    /// Dia(P_mu) = FG i with left/right translation.
    pub fn dia(
        fga: &GroupAlgebra,
        right: &Subgroup,
        idem: &[Fel],
        tag: &str,
    ) -> PfsResult<GModule> {
        let rows: Vec<Vec<Fel>> = (0..fga.dim() as Gel)
            .map(|g| fga.mul(&fga.basis_elem(g), idem))
            .collect();
        GModule::from_span(fga, right, rows, idem, tag)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn tag(&self) -> &str {
        &self.tag
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn right_subgroup(&self) -> &Subgroup {
        &self.right
    }
    pub fn product_group(&self) -> &Arc<Group> {
        &self.product
    }
    pub fn generator(&self) -> &[Fel] {
        &self.generator
    }
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn pair_index(&self, g: Gel, right_local: usize) -> usize {
        g as usize * self.right.order() + right_local
    }

    pub fn right_local(&self, u: Gel) -> usize {
        self.right
            .elements()
            .binary_search(&u)
            .expect("element outside the right subgroup")
    }

    /// Index of (s, s) for s in the right subgroup (the diagonal embedding).
    pub fn diagonal_index(&self, s: Gel) -> usize {
        self.pair_index(s, self.right_local(s))
    }

    /// Same acting product group (G and the right factor agree).
    pub fn same_acting_group(&self, other: &GModule) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            && self.right.elements() == other.right.elements()
    }

    /// Apply the pair (g, u_local) to an FG vector: x -> g x r(u)^-1.
    fn act_fg(&self, h: usize, x: &[Fel]) -> Vec<Fel> {
        let nr = self.right.order();
        let g = (h / nr) as Gel;
        let u = self.right_map[h % nr];
        let uinv = self.group.inv(u);
        let mut out = vec![ZERO; x.len()];
        for (pos, &c) in x.iter().enumerate() {
            if c != ZERO {
                let t = self.group.mul(self.group.mul(g, pos as Gel), uinv);
                out[t as usize] = c;
            }
        }
        out
    }

    /// Action matrix of a product-group element, module coordinates; lazy.
    pub fn action_matrix(&self, h: usize) -> &FieldMatrix {
        self.mats[h].get_or_init(|| {
            let dim = self.dim();
            let mut m = FieldMatrix::zeros(self.field.clone(), dim, dim);
            for j in 0..dim {
                let img = self.act_fg(h, self.basis.row(j));
                let coords = self
                    .basis
                    .coords_in_rref_basis(&img, &self.pivots)
                    .expect("module basis not closed under the action");
                for (r, &c) in coords.iter().enumerate() {
                    m.set(r, j, c);
                }
            }
            m
        })
    }

    pub fn apply(&self, h: usize, v: &[Fel]) -> Vec<Fel> {
        self.action_matrix(h).apply(v)
    }

    pub fn to_fg(&self, coords: &[Fel]) -> Vec<Fel> {
        let f = &self.field;
        let mut out = vec![ZERO; self.basis.cols()];
        for (t, &c) in coords.iter().enumerate() {
            if c == ZERO {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(self.basis.row(t)) {
                *o = f.add(*o, f.mul(c, r));
            }
        }
        out
    }

    pub fn from_fg(&self, v: &[Fel]) -> Option<Vec<Fel>> {
        self.basis.coords_in_rref_basis(v, &self.pivots)
    }

    pub(crate) fn spun(&self) -> PfsResult<&meataxe::SpunData> {
        if let Some(s) = self.spun.get() {
            return Ok(s);
        }
        let s = meataxe::spin(self)?;
        let _ = self.spun.set(s);
        Ok(self.spun.get().unwrap())
    }

    /// Spot-check that the generator matrices respect the multiplication
    /// table (random products).
    pub fn verify_action(&self, samples: usize) -> PfsResult<()> {
        let mut s = 0x5A5A_5A5Au64;
        let n = self.product.order();
        for _ in 0..samples {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let a = (s % n as u64) as usize;
            let b = ((s >> 16) % n as u64) as usize;
            let ab = self.product.mul(a as Gel, b as Gel) as usize;
            let lhs = self.action_matrix(a).matmul(self.action_matrix(b));
            if &lhs != self.action_matrix(ab) {
                return Err(PfsError::Inconsistency(format!(
                    "action of {} violates the multiplication table at ({a},{b})",
                    self.tag
                )));
            }
        }
        Ok(())
    }
}
