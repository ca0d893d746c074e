use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use qsteiner::gfspaces::{FieldSpec, GrassmannIndexer, Subspace};
use qsteiner::steiner::io::{parse_design_document, DesignDocument, DesignFile};
use qsteiner::steiner::{enumerate_steiner, rank_certificate, sample_steiner, verify_design, Design, ParamSet};

fn pg32() -> &'static (ParamSet, Vec<Design>) {
    static CELL: OnceLock<(ParamSet, Vec<Design>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let all = enumerate_steiner(&p).unwrap();
        (p, all)
    })
}

fn field_order() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sampled_spreads_are_enumerated_spreads(seed in any::<u64>(), count in 1usize..8) {
        let (p, all) = pg32();
        let a = sample_steiner(p, seed, count).unwrap();
        let b = sample_steiner(p, seed, count).unwrap();
        prop_assert_eq!(&a.designs, &b.designs);
        let distinct: BTreeSet<_> = a.designs.iter().map(|d| d.blocks().to_vec()).collect();
        prop_assert_eq!(distinct.len(), a.designs.len());
        for d in &a.designs {
            prop_assert!(all.contains(d));
        }
    }

    #[test]
    fn dropping_blocks_leaves_an_uncovered_point(which in 0usize..56, mask in 1u32..31) {
        let (p, all) = pg32();
        let blocks = all[which].subspaces().unwrap();
        let kept: Vec<Subspace> = blocks.iter().enumerate().filter(|(i, _)| mask & (1 << i) == 0).map(|(_, b)| b.clone()).collect();
        let v = verify_design(&kept, p, 1).unwrap();
        prop_assert!(!v.valid);
        let w = v.witness.unwrap();
        prop_assert_eq!(w.coverage, 0);
        prop_assert!(kept.iter().all(|b| !b.contains(p.field(), &w.subspace).unwrap()));
    }

    #[test]
    fn certificate_bounds_are_ordered(picks in prop::collection::btree_set(0usize..56, 0..30)) {
        let (p, all) = pg32();
        let chosen: Vec<Design> = picks.iter().map(|&i| all[i].clone()).collect();
        let c = rank_certificate(p, &chosen).unwrap();
        prop_assert!(c.lower_bound <= chosen.len());
        prop_assert!(c.lower_bound <= c.upper_bound);
        prop_assert_eq!(c.upper_bound, 21);
        prop_assert!(c.designs_satisfy_w && c.annihilates);
    }

    #[test]
    fn indexer_round_trip(q in field_order(), n in 1usize..6, k_frac in 0.0f64..=1.0, pos in 0.0f64..1.0) {
        let k = (k_frac * n as f64).round() as usize;
        let field = FieldSpec::new(q).unwrap();
        let idx = GrassmannIndexer::new(&field, n, k).unwrap();
        let i = ((pos * idx.len() as f64) as usize).min(idx.len() - 1);
        let s = idx.subspace_at(i).unwrap();
        prop_assert_eq!(s.dim(), k);
        prop_assert_eq!(idx.index_of(&s).unwrap(), i);
    }

    #[test]
    fn design_files_load_canonically(q in field_order(), entries in prop::collection::vec(0u16..5, 2 * 5 * 4)) {
        let field = FieldSpec::new(q).unwrap();
        let n = 5;
        let rows: Vec<u16> = entries.iter().map(|&x| x % q as u16).collect();
        let blocks: Vec<Vec<Vec<u16>>> = rows.chunks(2 * n).map(|b| b.chunks(n).map(<[u16]>::to_vec).collect()).collect();
        let file = DesignFile { q, n, k: 2, t: 1, lambda: None, blocks };
        let text = serde_json::to_string(&file).unwrap();
        let independent = rows.chunks(2 * n).all(|b| Subspace::span(&field, n, b).unwrap().dim() == 2);
        match parse_design_document(&text) {
            Ok(DesignDocument::Single(loaded)) => {
                prop_assert!(independent);
                for (b, raw) in loaded.blocks.iter().zip(rows.chunks(2 * n)) {
                    prop_assert_eq!(b, &Subspace::span(&field, n, raw).unwrap());
                }
            }
            Ok(DesignDocument::Family(_)) => prop_assert!(false, "single design parsed as a family"),
            Err(_) => prop_assert!(!independent),
        }
    }
}
