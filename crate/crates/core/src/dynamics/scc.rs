use super::{CausalGraph, NodeSet};

/// Tarjan's algorithm with an explicit call stack. Components come back
/// ordered by their smallest member.
pub fn strongly_connected_components(g: &CausalGraph) -> Vec<NodeSet> {
    const UNVISITED: usize = usize::MAX;
    let n = g.node_count();
    let succ: Vec<Vec<usize>> = (1..=n)
        .map(|v| g.successors(v).iter().map(|w| w - 1).collect())
        .collect();

    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut comps = Vec::new();
    // (node, position in its successor list)
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = frames.last_mut() {
            let v = top.0;
            if let Some(&w) = succ[v].get(top.1) {
                top.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = NodeSet::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.insert(w + 1);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps.sort_by_key(|c| c.first());
    comps
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components ignoring edge direction, ordered by smallest member.
pub fn weak_components(g: &CausalGraph) -> Vec<NodeSet> {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    for (s, t) in g.edges() {
        let (a, b) = (find(&mut parent, s - 1), find(&mut parent, t - 1));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: Vec<Option<usize>> = vec![None; n];
    let mut comps: Vec<NodeSet> = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        let slot = *by_root[r].get_or_insert_with(|| {
            comps.push(NodeSet::new());
            comps.len() - 1
        });
        comps[slot].insert(v + 1);
    }
    comps
}
