use serde::Serialize;

use super::Arrangement;

/// Containment structure of an arrangement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NestingForest {
    /// Smallest circle containing each circle, if any.
    pub parent: Vec<Option<usize>>,
    /// Length of the longest nesting chain ending at each circle (1 when unnested).
    pub depth: Vec<usize>,
}

impl NestingForest {
    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(i, _)| i)
    }

    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Innermost circles of maximum-cardinality nesting chains.
    pub fn deepest(&self) -> Vec<usize> {
        let max = self.max_depth();
        (0..self.depth.len()).filter(|&i| self.depth[i] == max).collect()
    }
}

pub fn nesting_forest(arr: &Arrangement) -> NestingForest {
    let circles = arr.circles();
    let n = circles.len();
    let mut containers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(inner, outer) in arr.nested_pairs() {
        containers[inner].push(outer);
    }
    let parent: Vec<Option<usize>> = containers
        .iter()
        .map(|c| {
            c.iter()
                .copied()
                .min_by(|&a, &b| circles[a].radius.total_cmp(&circles[b].radius).then(a.cmp(&b)))
        })
        .collect();

    // a container always has a strictly larger radius, so process big to small
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| circles[b].radius.total_cmp(&circles[a].radius).then(a.cmp(&b)));
    let mut depth = vec![1usize; n];
    for &i in &order {
        depth[i] = 1 + containers[i].iter().map(|&o| depth[o]).max().unwrap_or(0);
    }
    NestingForest { parent, depth }
}

impl Arrangement {
    /// A deepest circle of smallest radius; the natural starting point for
    /// peeling off a low-degree circle.
    pub fn smallest_deepest_circle(&self) -> usize {
        let forest = nesting_forest(self);
        forest
            .deepest()
            .into_iter()
            .min_by(|&a, &b| {
                self.circles()[a]
                    .radius
                    .total_cmp(&self.circles()[b].radius)
                    .then(a.cmp(&b))
            })
            .expect("arrangement is non-empty")
    }
}
