use super::{Coalition, Network, Player};
use crate::error::{Error, Result};

/// A rooted spanning tree of one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsTree {
    component: Coalition,
    root: Player,
    /// Indexed by player; `None` for the root and for non-members.
    parent: Vec<Option<Player>>,
    order: Vec<Player>,
}

impl BfsTree {
    pub fn component(&self) -> Coalition {
        self.component
    }

    pub fn root(&self) -> Player {
        self.root
    }

    pub fn parent(&self, player: Player) -> Option<Player> {
        self.parent.get(player).copied().flatten()
    }

    /// Visitation order; starts at the root and lists each player after its parent.
    pub fn order(&self) -> &[Player] {
        &self.order
    }

    /// Tree edges as `(child, parent)` in visitation order.
    pub fn edges(&self) -> impl Iterator<Item = (Player, Player)> + '_ {
        self.order
            .iter()
            .skip(1)
            .map(|&j| (j, self.parent[j].expect("non-root has a parent")))
    }

    pub fn is_tree_edge(&self, a: Player, b: Player) -> bool {
        self.parent(a) == Some(b) || self.parent(b) == Some(a)
    }

    /// Spanning tree of `component` taken from the links of `forest`, rooted at the
    /// component minimum and oriented by breadth-first search.
    pub fn from_forest(forest: &Network, component: Coalition) -> Result<Self> {
        let tree = bfs(forest, component)?;
        let inside = forest.induced(component)?.link_count();
        if tree.order.len() != component.len() || inside != component.len() - 1 {
            return Err(Error::domain(format!(
                "links {forest} do not form a spanning tree of {component}"
            )));
        }
        Ok(tree)
    }

    /// Players from `player` up to the root, inclusive.
    fn ancestors(&self, player: Player) -> Vec<Player> {
        let mut path = vec![player];
        let mut current = player;
        while let Some(p) = self.parent(current) {
            path.push(p);
            current = p;
        }
        path
    }
}

/// Breadth-first search from `min(component)`, neighbours taken in increasing order.
fn bfs(g: &Network, component: Coalition) -> Result<BfsTree> {
    let root = component
        .first()
        .ok_or_else(|| Error::domain("empty component"))?;
    if !component.is_subset_of(g.player_set()) {
        return Err(Error::domain(format!("{component} is not a set of players of {g:?}")));
    }
    let mut parent = vec![None; g.players() + 1];
    let mut order = vec![root];
    let mut visited = Coalition::singleton(root);
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for j in g.neighbors(i).intersection(component).difference(visited).iter() {
            parent[j] = Some(i);
            visited = visited.with(j);
            order.push(j);
        }
    }
    Ok(BfsTree {
        component,
        root,
        parent,
        order,
    })
}

/// The minimal-index BFS tree of a component with at least two players.
pub fn minimal_index_bfs(g: &Network, component: Coalition) -> Result<BfsTree> {
    if !g.is_component(component) {
        return Err(Error::domain(format!("{component} is not a component of {g}")));
    }
    if component.len() < 2 {
        return Err(Error::domain(format!("component {component} is a singleton")));
    }
    bfs(g, component)
}

/// A cycle `i_0 → i_1 → … → i_{ℓ-1} → i_0` of distinct players, `ℓ ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<Player>,
}

impl Cycle {
    /// Checks that `vertices` are distinct and wrap-connected in `g`.
    pub fn new(g: &Network, vertices: Vec<Player>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::domain("a cycle needs at least three players"));
        }
        let members: Coalition = vertices.iter().copied().collect();
        if members.len() != vertices.len() {
            return Err(Error::domain(format!("cycle {vertices:?} repeats a player")));
        }
        let cycle = Cycle { vertices };
        if let Some((a, b)) = cycle.edges().find(|&(a, b)| !g.has_link(a, b)) {
            return Err(Error::domain(format!("{{{a},{b}}} is not a link of {g}")));
        }
        Ok(cycle)
    }

    pub fn vertices(&self) -> &[Player] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn members(&self) -> Coalition {
        self.vertices.iter().copied().collect()
    }

    /// `(i_s, i_{s+1})` for `s = 0..ℓ`, indices mod `ℓ`.
    pub fn edges(&self) -> impl Iterator<Item = (Player, Player)> + '_ {
        let l = self.vertices.len();
        (0..l).map(move |s| (self.vertices[s], self.vertices[(s + 1) % l]))
    }
}

/// The cycle closed by the non-tree link `{a, b}`.
///
/// Starts at the smaller endpoint, walks the tree path to the larger one, and
/// returns along the non-tree link.
pub fn fundamental_cycle(tree: &BfsTree, link: (Player, Player)) -> Result<Cycle> {
    let (s, t) = (link.0.min(link.1), link.0.max(link.1));
    if s == t || !tree.component.contains(s) || !tree.component.contains(t) {
        return Err(Error::domain(format!(
            "{{{s},{t}}} does not join two players of {}",
            tree.component
        )));
    }
    if tree.is_tree_edge(s, t) {
        return Err(Error::domain(format!("{{{s},{t}}} is a tree edge")));
    }
    let up_s = tree.ancestors(s);
    let up_t = tree.ancestors(t);
    let on_t: Coalition = up_t.iter().copied().collect();
    let meet = up_s
        .iter()
        .position(|p| on_t.contains(*p))
        .expect("both paths end at the root");
    let lca = up_s[meet];
    let mut vertices: Vec<Player> = up_s[..=meet].to_vec();
    let down = up_t.iter().position(|&p| p == lca).expect("lca on path");
    vertices.extend(up_t[..down].iter().rev());
    Ok(Cycle { vertices })
}

/// Every cycle of `g` exactly once, up to rotation and reversal.
///
/// Each cycle starts at its smallest player, and its second player is smaller
/// than its last.
pub fn all_cycles(g: &Network) -> Vec<Cycle> {
    let n = g.players();
    let neighbors: Vec<Coalition> = (0..=n)
        .map(|p| if p == 0 { Coalition::EMPTY } else { g.neighbors(p) })
        .collect();
    let mut out = Vec::new();
    for start in 1..=n {
        let allowed = Coalition::full(n).difference(Coalition::full(start));
        let mut path = vec![start];
        extend_cycles(&neighbors, allowed, &mut path, Coalition::singleton(start), &mut out);
    }
    out
}

fn extend_cycles(
    neighbors: &[Coalition],
    allowed: Coalition,
    path: &mut Vec<Player>,
    on_path: Coalition,
    out: &mut Vec<Cycle>,
) {
    let last = *path.last().expect("path starts nonempty");
    let start = path[0];
    if path.len() >= 3 && neighbors[last].contains(start) && path[1] < last {
        out.push(Cycle {
            vertices: path.clone(),
        });
    }
    for next in neighbors[last].intersection(allowed).difference(on_path).iter() {
        path.push(next);
        extend_cycles(neighbors, allowed, path, on_path.with(next), out);
        path.pop();
    }
}

/// Every spanning forest of `g`: link subsets with one spanning tree per component.
pub fn spanning_forests(g: &Network) -> Vec<Network> {
    let components = g.components();
    let size = g.players() - components.len();
    g.link_subsets()
        .filter(|f| f.link_count() == size && f.components() == components)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(n: usize, links: &[(Player, Player)]) -> Network {
        Network::from_links(n, links.iter().copied()).unwrap()
    }

    #[test]
    fn bfs_on_triangle_and_path() {
        let triangle = net(3, &[(1, 2), (1, 3), (2, 3)]);
        let t = minimal_index_bfs(&triangle, Coalition::full(3)).unwrap();
        assert_eq!(t.root(), 1);
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.parent(3), Some(1));

        let path = net(3, &[(1, 2), (2, 3)]);
        let t = minimal_index_bfs(&path, Coalition::full(3)).unwrap();
        assert_eq!((t.parent(2), t.parent(3)), (Some(1), Some(2)));
        assert_eq!(t.order(), &[1, 2, 3]);

        let short = net(4, &[(2, 4)]);
        let c: Coalition = [2, 4].into_iter().collect();
        let t = minimal_index_bfs(&short, c).unwrap();
        assert_eq!((t.root(), t.parent(4)), (2, Some(2)));
    }

    #[test]
    fn bfs_rejects_non_components() {
        let g = net(3, &[(1, 2), (2, 3)]);
        let c: Coalition = [1, 2].into_iter().collect();
        assert!(minimal_index_bfs(&g, c).is_err());
        assert!(minimal_index_bfs(&g, Coalition::singleton(1)).is_err());
    }

    #[test]
    fn bfs_visits_neighbours_in_index_order() {
        let g = net(5, &[(1, 4), (1, 2), (4, 3), (2, 5), (3, 5)]);
        let t = minimal_index_bfs(&g, Coalition::full(5)).unwrap();
        assert_eq!(t.order(), &[1, 2, 4, 5, 3]);
        assert_eq!(t.parent(5), Some(2));
        assert_eq!(t.parent(3), Some(4));
    }

    #[test]
    fn fundamental_cycles() {
        let triangle = net(3, &[(1, 2), (1, 3), (2, 3)]);
        let t = minimal_index_bfs(&triangle, Coalition::full(3)).unwrap();
        let z = fundamental_cycle(&t, (3, 2)).unwrap();
        assert_eq!(z.vertices(), &[2, 1, 3]);
        assert!(fundamental_cycle(&t, (1, 2)).is_err());

        let square = net(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let forest = net(4, &[(1, 2), (2, 3), (3, 4)]);
        let t = BfsTree::from_forest(&forest, Coalition::full(4)).unwrap();
        let z = fundamental_cycle(&t, (1, 4)).unwrap();
        assert_eq!(z.vertices(), &[1, 2, 3, 4]);
        assert!(Cycle::new(&square, z.vertices().to_vec()).is_ok());
    }

    #[test]
    fn forest_validation() {
        let forest = net(4, &[(1, 2), (3, 4)]);
        assert!(BfsTree::from_forest(&forest, Coalition::full(4)).is_err());
        let cyclic = net(3, &[(1, 2), (2, 3), (1, 3)]);
        assert!(BfsTree::from_forest(&cyclic, Coalition::full(3)).is_err());
    }

    #[test]
    fn cycle_counts_on_complete_graphs() {
        // K_n has sum over l >= 3 of C(n, l) (l - 1)! / 2 cycles.
        assert_eq!(all_cycles(&Network::complete(3).unwrap()).len(), 1);
        assert_eq!(all_cycles(&Network::complete(4).unwrap()).len(), 7);
        assert_eq!(all_cycles(&Network::complete(5).unwrap()).len(), 37);
        assert_eq!(all_cycles(&Network::complete(6).unwrap()).len(), 197);
        let g = Network::complete(5).unwrap();
        for z in all_cycles(&g) {
            assert!(Cycle::new(&g, z.vertices().to_vec()).is_ok());
        }
    }

    #[test]
    fn spanning_forest_counts() {
        // Cayley: K_4 has 16 spanning trees; a 4-cycle has 4.
        assert_eq!(spanning_forests(&Network::complete(4).unwrap()).len(), 16);
        assert_eq!(spanning_forests(&net(4, &[(1, 2), (2, 3), (3, 4), (1, 4)])).len(), 4);
        assert_eq!(spanning_forests(&net(4, &[(1, 2), (3, 4)])).len(), 1);
    }
}
