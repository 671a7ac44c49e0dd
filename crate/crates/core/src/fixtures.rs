//! Shared fixtures for the unit tests.

use std::sync::Arc;

use crate::gfq::{make_field, FieldTable};
use crate::pairsystems::SubspacePairSystem;
use crate::subspace::{rref, Subspace};

pub(crate) fn line(field: &Arc<FieldTable>, v: &[u8]) -> Subspace {
    rref(field, v.len(), &[v.to_vec()]).unwrap()
}

/// The three-pair weak (1,1)-system over F_2^2 on the lines
/// a = <(1,0)>, b = <(0,1)>, c = <(1,1)>: pairs (a,b), (b,c), (c,a).
///
/// The smallest tight instance: its weighted sum at j = 1 is exactly 1.
pub(crate) fn triangle_f2() -> SubspacePairSystem {
    let f = make_field(2).unwrap();
    let a = line(&f, &[1, 0]);
    let b = line(&f, &[0, 1]);
    let c = line(&f, &[1, 1]);
    SubspacePairSystem::new(&f, 2, vec![(a.clone(), b.clone()), (b, c.clone()), (c, a)]).unwrap()
}
