mod common;

use physec_core::sweep::{evaluate, rm_family, select_best, simulate_mc, sweep};
use physec_core::{BlockMapping, ChannelGrid, LinearCode, Location, Point, RegionMap, RmRole, WiretapCode};
use proptest::prelude::*;

const EVES: usize = 4;

fn grid_from(rows: Vec<Vec<f64>>) -> ChannelGrid {
    let locations = (0..rows.len())
        .map(|i| Location {
            x: i as f64,
            y: 0.0,
            region: if i < 2 { "bob".into() } else { format!("eve{}", i - 2) },
        })
        .collect();
    let snr = rows.into_iter().map(|r| r.try_into().unwrap()).collect();
    ChannelGrid::new(locations, snr, Point { x: 0.0, y: 0.0 }, 0.5).unwrap()
}

fn grids() -> impl Strategy<Value = ChannelGrid> {
    prop::collection::vec(prop::collection::vec(18.0f64..36.0, 64), 2 + EVES).prop_map(grid_from)
}

fn all_eves() -> RegionMap {
    RegionMap::new("bob", (0..EVES).map(|i| format!("eve{i}")))
}

fn codes() -> Vec<WiretapCode> {
    let mut out = vec![WiretapCode::build(
        &LinearCode::new(
            physec_core::BitMatrix::from_bitstrings(&["0111", "1110"], 4).unwrap(),
            "table-I",
        )
        .unwrap(),
    )
    .unwrap()];
    out.extend(rm_family(3, &[RmRole::Code, RmRole::Dual]).unwrap());
    out.extend(
        common::seeded_codes(3, 5, 9, 42)
            .iter()
            .map(|c| WiretapCode::build(c).unwrap()),
    );
    out
}

const TAUS: [f64; 7] = [25.0, 26.0, 27.0, 28.0, 29.0, 30.0, 31.0];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn throughput_identity_and_tau_monotonicity(g in grids(), mapping_rr in any::<bool>()) {
        let mapping = if mapping_rr { BlockMapping::RoundRobin } else { BlockMapping::Adversarial };
        for w in codes() {
            let mut prev: Option<(usize, f64)> = None;
            for &tau in &TAUS {
                let p = evaluate(&w, &g, &all_eves(), tau, mapping).unwrap();
                prop_assert_eq!(p.throughput * p.n as f64, (p.k * p.active_carriers) as f64);
                prop_assert!((0.0..=100.0).contains(&p.min_equivocation_pct));
                if let (Some((a, _)), BlockMapping::Adversarial) = (prev, mapping) {
                    prop_assert!(p.active_carriers <= a);
                }
                if let (Some((_, e)), BlockMapping::Adversarial) = (prev, mapping) {
                    prop_assert!(p.min_equivocation_pct >= e);
                }
                prev = Some((p.active_carriers, p.min_equivocation_pct));
            }
        }
    }

    #[test]
    fn each_location_monotone_in_tau(g in grids()) {
        let w = WiretapCode::from_reed_muller(1, 3, RmRole::Dual).unwrap();
        for i in 0..EVES {
            let regions = RegionMap::new("bob", [format!("eve{i}")]);
            let pct: Vec<f64> = TAUS
                .iter()
                .map(|&t| evaluate(&w, &g, &regions, t, BlockMapping::Adversarial).unwrap().min_equivocation_pct)
                .collect();
            prop_assert!(pct.windows(2).all(|p| p[0] <= p[1]), "{:?}", pct);
        }
    }

    #[test]
    fn full_equivocation_iff_nothing_leaks(g in grids()) {
        for w in codes() {
            for &tau in &TAUS {
                let p = evaluate(&w, &g, &all_eves(), tau, BlockMapping::Adversarial).unwrap();
                let leaks = (0..EVES).any(|i| {
                    let r = RegionMap::new("bob", [format!("eve{i}")]);
                    evaluate(&w, &g, &r, tau, BlockMapping::Adversarial).unwrap().min_equivocation_pct < 100.0
                });
                prop_assert_eq!(p.is_fully_secure(), !leaks);
            }
        }
    }

    #[test]
    fn select_best_ignores_order(g in grids(), perm_seed in any::<u64>()) {
        let points: Vec<_> = sweep(&codes(), &g, &all_eves(), &TAUS, BlockMapping::Adversarial)
            .unwrap()
            .into_iter()
            .map(Result::unwrap)
            .collect();
        let mut shuffled = points.clone();
        let mut s = perm_seed;
        for i in (1..shuffled.len()).rev() {
            s = physec_core::seed::splitmix64(s);
            shuffled.swap(i, (s % (i as u64 + 1)) as usize);
        }
        for flag in [true, false] {
            prop_assert_eq!(select_best(&points, flag), select_best(&shuffled, flag));
        }
    }

    #[test]
    fn monte_carlo_stays_under_the_bound(g in grids(), seed in any::<u64>()) {
        for w in codes().iter().filter(|w| w.n() <= 8) {
            match simulate_mc(w, &g, &all_eves(), 27.0, 64, seed, 16) {
                Ok(r) => {
                    prop_assert_eq!(r.bob_errors, 0);
                    prop_assert!(r.eve_leakage_bits_max <= r.worst_case_bound as f64);
                    prop_assert!(r.eve_leakage_bits_mean <= r.eve_leakage_bits_max);
                }
                Err(physec_core::Error::BlockExceedsCarriers { .. }) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}

#[test]
fn family_sweep_has_no_duplicates() {
    let g = grid_from(vec![vec![30.0; 64]; 2 + EVES]);
    let family = rm_family(5, &[RmRole::Code, RmRole::Dual]).unwrap();
    let points = sweep(&family, &g, &all_eves(), &TAUS, BlockMapping::Adversarial).unwrap();
    assert_eq!(points.len(), 7 * family.len());
    let mut keys: Vec<(String, u64)> = points
        .iter()
        .map(|p| {
            let p = p.as_ref().unwrap();
            (p.code_label.clone(), p.tau_db.to_bits())
        })
        .collect();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), points.len());
}

#[test]
fn monte_carlo_is_seed_deterministic() {
    let g = grid_from(
        (0..2 + EVES)
            .map(|i| (0..64).map(|c| 20.0 + ((i * 7 + c * 3) % 15) as f64).collect())
            .collect(),
    );
    let w = WiretapCode::from_reed_muller(1, 3, RmRole::Code).unwrap();
    let a = simulate_mc(&w, &g, &all_eves(), 25.0, 500, 3, 16).unwrap();
    let b = simulate_mc(&w, &g, &all_eves(), 25.0, 500, 3, 16).unwrap();
    assert_eq!(a, b);
}
