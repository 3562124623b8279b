//! Brute-force isomorphism for graphs of order at most [`ISO_MAX_ORDER`].

use crate::error::GraphError;
use crate::graph::Graph;

pub const ISO_MAX_ORDER: usize = 8;

fn check_cap(g: &Graph) -> Result<(), GraphError> {
    if g.order() > ISO_MAX_ORDER {
        Err(GraphError::Unsupported {
            n: g.order(),
            cap: ISO_MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

pub fn isomorphic_small(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    Ok(find_isomorphism(g, h)?.is_some())
}

/// Returns `map` with `map[v]` the image in `h` of vertex `v` of `g`, so that
/// `g.relabel(&map) == *h`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    check_cap(g)?;
    check_cap(h)?;
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    let (gdeg, hdeg) = (dg.clone(), dh.clone());
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(g, h, &gdeg, &hdeg, 0, &mut map, &mut used).then_some(map))
}

fn extend(
    g: &Graph,
    h: &Graph,
    gdeg: &[usize],
    hdeg: &[usize],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == g.order() {
        return true;
    }
    for w in 0..h.order() {
        if used[w] || gdeg[v] != hdeg[w] {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, gdeg, hdeg, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path, spider};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn basic_cases() {
        let c4 = cycle(4).unwrap();
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!isomorphic_small(&c4, &two_k2).unwrap());
        assert_eq!(c4.complement(), two_k2.relabel(&[0, 2, 1, 3]).unwrap());
        let p4 = path(4).unwrap();
        assert!(isomorphic_small(&p4, &p4.complement()).unwrap());
        let c5 = cycle(5).unwrap();
        assert!(isomorphic_small(&c5, &c5.complement()).unwrap());
    }

    #[test]
    fn shuffled_spider_is_found() {
        let g = spider(2, 2, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).unwrap();
            let map = find_isomorphism(&g, &h).unwrap().unwrap();
            assert_eq!(g.relabel(&map).unwrap(), h);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let k9 = complete(9).unwrap();
        assert!(matches!(
            isomorphic_small(&k9, &k9),
            Err(GraphError::Unsupported { n: 9, cap: 8 })
        ));
    }
}
