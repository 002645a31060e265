//! Serialization round-trip is the identity on constructed packings.

use proptest::prelude::*;

use sqpack_cli::certificate::{from_json, to_json};
use sqpack_core::constructions::{combine, grid};
use sqpack_core::rational::rat;
use sqpack_core::{Packing, Square};

fn arb_constructed_packing() -> impl Strategy<Value = Packing> {
    prop_oneof![
        (1u64..=6).prop_map(|b| grid(b).unwrap()),
        (1u64..=3, 1u64..=3, 0u64..=3).prop_map(|(a1, a2, extra)| {
            combine(&grid(a1).unwrap(), &grid(a2).unwrap(), a1, a2, a1 + a2 + extra).unwrap()
        }),
        (2u64..=4, 1i64..=7).prop_map(|(b, num)| {
            // shrunk grid with awkward denominators
            let factor = rat(num, 8);
            let squares: Vec<Square> = grid(b)
                .unwrap()
                .squares()
                .iter()
                .map(|sq| {
                    Square::new(sq.x().clone(), sq.y().clone(), sq.side() * &factor).unwrap()
                })
                .collect();
            Packing::new(squares)
        }),
    ]
}

proptest! {
    #[test]
    fn round_trip_is_identity(p in arb_constructed_packing()) {
        let back = from_json(&to_json(&p)).unwrap();
        prop_assert_eq!(back, p);
    }
}
