//! Instance checker for van Kampen cubes.
//!
//! A cube consists of a bottom square, a top square and four vertical
//! morphisms. The checker validates a concrete cube: it does not prove the
//! property for the category, it evaluates the premises and the
//! "top pushout iff fronts pullbacks" equivalence on the given instance.

use crate::error::{Error, Result};
use crate::limits::{is_square, CommutativeSquare, SquareKind};
use crate::morphism::{compose, GraphMorphism};

/// Which morphisms are required to be injective for the premises.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VkMode {
    /// All four vertical morphisms must be injective.
    Vertical,
    /// All eight horizontal morphisms (top and bottom squares) must be
    /// injective.
    Horizontal,
}

/// A commuting cube over a bottom square.
///
/// Corner names: bottom square `f: A -> B` (the distinguished leg),
/// `g: A -> C`, `h: B -> D`, `k: C -> D`; the top square is primed; the
/// verticals map primed corners down to unprimed ones.
#[derive(Clone, Debug)]
pub struct VkCube {
    pub bottom: CommutativeSquare,
    pub top: CommutativeSquare,
    pub vert_a: GraphMorphism,
    pub vert_b: GraphMorphism,
    pub vert_c: GraphMorphism,
    pub vert_d: GraphMorphism,
    pub mode: VkMode,
}

/// Outcome of checking one cube.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VkReport {
    pub premises_ok: bool,
    pub top_is_pushout: bool,
    pub fronts_are_pullbacks: bool,
    /// The equivalence itself; must hold whenever `premises_ok`.
    pub vk_holds: bool,
}

impl VkCube {
    /// The back faces, through corners A'-B'-A-B and A'-C'-A-C.
    fn back_squares(&self) -> Result<(CommutativeSquare, CommutativeSquare)> {
        let right = CommutativeSquare::new(
            self.top.f.clone(),
            self.vert_a.clone(),
            self.vert_b.clone(),
            self.bottom.f.clone(),
        )
        .map_err(|_| Error::NonCommutingCube("back face through B".into()))?;
        let left = CommutativeSquare::new(
            self.top.g.clone(),
            self.vert_a.clone(),
            self.vert_c.clone(),
            self.bottom.g.clone(),
        )
        .map_err(|_| Error::NonCommutingCube("back face through C".into()))?;
        Ok((right, left))
    }

    /// The front faces, through corners B'-D'-B-D and C'-D'-C-D.
    fn front_squares(&self) -> Result<(CommutativeSquare, CommutativeSquare)> {
        let right = CommutativeSquare::new(
            self.top.h.clone(),
            self.vert_b.clone(),
            self.vert_d.clone(),
            self.bottom.h.clone(),
        )
        .map_err(|_| Error::NonCommutingCube("front face through B".into()))?;
        let left = CommutativeSquare::new(
            self.top.k.clone(),
            self.vert_c.clone(),
            self.vert_d.clone(),
            self.bottom.k.clone(),
        )
        .map_err(|_| Error::NonCommutingCube("front face through C".into()))?;
        Ok((right, left))
    }

    fn horizontals(&self) -> [&GraphMorphism; 8] {
        [
            &self.bottom.f,
            &self.bottom.g,
            &self.bottom.h,
            &self.bottom.k,
            &self.top.f,
            &self.top.g,
            &self.top.h,
            &self.top.k,
        ]
    }

    fn verticals(&self) -> [&GraphMorphism; 4] {
        [&self.vert_a, &self.vert_b, &self.vert_c, &self.vert_d]
    }

    /// Checks that all six faces commute.
    pub fn commutes(&self) -> Result<()> {
        if !self
            .bottom
            .commutes()
            .map_err(|_| Error::NonCommutingCube("bottom".into()))?
        {
            return Err(Error::NonCommutingCube("bottom".into()));
        }
        if !self
            .top
            .commutes()
            .map_err(|_| Error::NonCommutingCube("top".into()))?
        {
            return Err(Error::NonCommutingCube("top".into()));
        }
        self.back_squares()?;
        self.front_squares()?;
        // the diagonal paths A' -> D must agree as well; they do when the
        // four side faces commute, but endpoints may still be mismatched
        let via_top = compose(&compose(&self.top.f, &self.top.h)?, &self.vert_d)?;
        let via_bottom = compose(&compose(&self.vert_a, &self.bottom.f)?, &self.bottom.h)?;
        if via_top != via_bottom {
            return Err(Error::NonCommutingCube("diagonal".into()));
        }
        Ok(())
    }
}

/// Evaluates the van Kampen property on one concrete cube.
pub fn check_vk_cube(cube: &VkCube) -> Result<VkReport> {
    cube.commutes()?;

    let bottom_is_pushout = is_square(&cube.bottom, SquareKind::Pushout)?;
    let distinguished_in_m = cube.bottom.f.is_injective();
    let (back_r, back_l) = cube.back_squares()?;
    let backs_are_pullbacks =
        is_square(&back_r, SquareKind::Pullback)? && is_square(&back_l, SquareKind::Pullback)?;
    let mode_m = match cube.mode {
        VkMode::Vertical => cube.verticals().iter().all(|m| m.is_injective()),
        VkMode::Horizontal => cube.horizontals().iter().all(|m| m.is_injective()),
    };
    let premises_ok = bottom_is_pushout && distinguished_in_m && backs_are_pullbacks && mode_m;

    let top_is_pushout = is_square(&cube.top, SquareKind::Pushout)?;
    let (front_r, front_l) = cube.front_squares()?;
    let fronts_are_pullbacks =
        is_square(&front_r, SquareKind::Pullback)? && is_square(&front_l, SquareKind::Pullback)?;

    Ok(VkReport {
        premises_ok,
        top_is_pushout,
        fronts_are_pullbacks,
        vk_holds: top_is_pushout == fronts_are_pullbacks,
    })
}
