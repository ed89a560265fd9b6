use std::collections::HashMap;

use freegroup::Letter;
use num_traits::{Signed, Zero};
use presentations::{pushforward, Element, GroupModel, Q};

use crate::support::WeightedSupport;

/// `‖h - ₓh‖₁ / ‖h‖₁` for a finitely supported `h` on the group, for every
/// positive generator `x`, where `ₓh(g) = h(x^-1 g)`.
pub fn invariance_of(h: &HashMap<Element, Q>, model: &dyn GroupModel) -> Vec<Q> {
    let mass: Q = h.values().sum();
    (0..model.alphabet().rank())
        .map(|g| {
            let (x, xi) = (Letter::pos(g), Letter::neg(g));
            let mut num = Q::zero();
            for (p, v) in h {
                let back = model.left_act(xi, p);
                num += (v - h.get(&back).cloned().unwrap_or_else(Q::zero)).abs();
                let fwd = model.left_act(x, p);
                if !h.contains_key(&fwd) {
                    num += v;
                }
            }
            num / &mass
        })
        .collect()
}

/// Exact invariance ratios of the pushforward of `f`.
pub fn exact_invariance(f: &WeightedSupport, model: &dyn GroupModel) -> Vec<Q> {
    let h: HashMap<Element, Q> = pushforward(f.iter(), model)
        .into_iter()
        .map(|c| (c.element, c.mass))
        .collect();
    invariance_of(&h, model)
}
