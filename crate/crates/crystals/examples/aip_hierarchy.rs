//! Levels of the affine integer programming relaxation on small digraphs.
//!
//! Run with: cargo run --example aip_hierarchy

use crystals::{aip_level_k, brute_homomorphism, is_bipartite, Digraph};

fn main() -> crystals::Result<()> {
    let k2 = Digraph::clique(2)?;
    let k3 = Digraph::clique(3)?;

    // the relaxation is sound on the YES side: actual homomorphisms are
    // accepted at every level
    let c6 = Digraph::cycle(6)?;
    assert!(brute_homomorphism(&c6, &k2)?.is_some());
    for level in 1..=3 {
        assert!(aip_level_k(&c6, &k2, level)?.yes);
    }
    println!("C6 -> K2 exists and every level answers YES");

    // against two colours the relaxation is exact: it answers YES exactly
    // for bipartite instances
    for n in 3..=7 {
        let cycle = Digraph::cycle(n)?;
        let verdict = aip_level_k(&cycle, &k2, 1)?;
        println!(
            "C{n} vs K2: level 1 says {:>3}, bipartite = {}",
            if verdict.yes { "YES" } else { "NO" },
            is_bipartite(&cycle)
        );
        assert_eq!(verdict.yes, is_bipartite(&cycle));
    }

    // against three or more colours it is not: K4 has no 3-colouring, yet
    // every level accepts it
    let k4 = Digraph::clique(4)?;
    assert!(brute_homomorphism(&k4, &k3)?.is_none());
    for level in 1..=3 {
        let verdict = aip_level_k(&k4, &k3, level)?;
        println!(
            "K4 vs K3: level {level} says {} ({} variables, {} constraints)",
            if verdict.yes { "YES" } else { "NO" },
            verdict.system.variable_count(),
            verdict.system.row_count(),
        );
        assert!(verdict.yes);
    }
    println!("K4 is not 3-colourable, but the relaxation never notices");
    Ok(())
}
