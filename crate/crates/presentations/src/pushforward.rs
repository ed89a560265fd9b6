use std::collections::HashMap;

use freegroup::Word;

use crate::model::{Element, GroupModel};
use crate::ratio::Q;

/// One fibre of the pushforward: a group element, its total mass and the
/// support words mapping onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushClass {
    pub element: Element,
    pub mass: Q,
    pub words: Vec<Word>,
}

/// Sums weights over the fibres of the model's normal form. Classes come in
/// order of first occurrence in `entries`.
pub fn pushforward<'a, I>(entries: I, model: &dyn GroupModel) -> Vec<PushClass>
where
    I: IntoIterator<Item = (&'a Word, &'a Q)>,
{
    let mut out: Vec<PushClass> = Vec::new();
    let mut at: HashMap<Element, usize> = HashMap::new();
    for (w, q) in entries {
        let g = model.normal_form(w);
        match at.get(&g) {
            Some(&i) => {
                out[i].mass += q;
                out[i].words.push(w.clone());
            }
            None => {
                at.insert(g.clone(), out.len());
                out.push(PushClass {
                    element: g,
                    mass: q.clone(),
                    words: vec![w.clone()],
                });
            }
        }
    }
    out
}
