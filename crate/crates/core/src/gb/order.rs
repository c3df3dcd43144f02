use std::cmp::Ordering;

use crate::arith::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseOrder {
    GrevLex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    /// Compare components first.
    Pot,
    /// Compare monomials first.
    Top,
}

/// Term order on `R^g`. Components with a smaller block number dominate
/// every term of a larger block; inside a block the position rule applies,
/// with smaller priority meaning larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub base: BaseOrder,
    pub position: Position,
    pub blocks: Vec<usize>,
    pub priority: Vec<usize>,
}

impl ModuleOrder {
    pub fn new(rank: usize, base: BaseOrder, position: Position) -> Self {
        ModuleOrder { base, position, blocks: vec![0; rank], priority: (0..rank).collect() }
    }

    /// Position over term, graded reverse lexicographic.
    pub fn pot(rank: usize) -> Self {
        Self::new(rank, BaseOrder::GrevLex, Position::Pot)
    }

    /// Two-block elimination order on `R^a ⊕ R^b` with the first block dominant.
    pub fn elimination(a: usize, b: usize, position: Position) -> Self {
        let mut o = Self::new(a + b, BaseOrder::GrevLex, position);
        for c in a..a + b {
            o.blocks[c] = 1;
        }
        o
    }

    pub fn rank(&self) -> usize {
        self.blocks.len()
    }

    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.base {
            BaseOrder::GrevLex => a.grevlex_cmp(b),
            BaseOrder::Lex => a.lex_cmp(b),
        }
    }

    pub fn cmp(&self, ca: usize, ma: &Monomial, cb: usize, mb: &Monomial) -> Ordering {
        match self.blocks[cb].cmp(&self.blocks[ca]) {
            Ordering::Equal => {}
            o => return o,
        }
        let pos = self.priority[cb].cmp(&self.priority[ca]);
        match self.position {
            Position::Pot => pos.then_with(|| self.cmp_mono(ma, mb)),
            Position::Top => self.cmp_mono(ma, mb).then(pos),
        }
    }
}
