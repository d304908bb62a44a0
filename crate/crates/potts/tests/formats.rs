use potts::formats::{format_emit, format_lmap, format_rimg, parse_emit, parse_lmap, parse_rimg};
use potts_core::{EmissionModel, GridDims, LabelField, RadiometricImage};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = LabelField> {
    (1usize..12, 1usize..12, 2usize..300).prop_flat_map(|(rows, cols, l)| {
        proptest::collection::vec(0..l as u16, rows * cols)
            .prop_map(move |labels| LabelField::new(GridDims::new(rows, cols).unwrap(), l, labels).unwrap())
    })
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e3f64..1e3,
        any::<f64>().prop_filter("finite", |v| v.is_finite()),
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(5e-324),
    ]
}

proptest! {
    #[test]
    fn lmap_round_trip(field in field_strategy()) {
        let text = format_lmap(&field);
        let parsed = parse_lmap(&text).unwrap();
        prop_assert!(parsed == field);
        prop_assert_eq!(format_lmap(&parsed), text);
    }

    #[test]
    fn rimg_round_trip(rows in 1usize..8, cols in 1usize..8, seed in proptest::collection::vec(finite(), 64)) {
        let values: Vec<f64> = seed.into_iter().take(rows * cols).collect();
        let image = RadiometricImage::new(GridDims::new(rows, cols).unwrap(), values).unwrap();
        let text = format_rimg(&image);
        let parsed = parse_rimg(&text).unwrap();
        for (a, b) in parsed.values().iter().zip(image.values()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        prop_assert_eq!(format_rimg(&parsed), text);
    }

    #[test]
    fn emit_round_trip(means in proptest::collection::vec(-1e6f64..1e6, 2..10), sigma in 1e-6f64..1e3) {
        let model = EmissionModel::new(means, sigma).unwrap();
        let text = format_emit(&model);
        let parsed = parse_emit(&text).unwrap();
        prop_assert_eq!(&parsed, &model);
        prop_assert_eq!(format_emit(&parsed), text);
    }

    #[test]
    fn corrupted_label_is_located(field in field_strategy(), pick in any::<proptest::sample::Index>()) {
        let n = field.dims().len();
        let i = pick.index(n);
        let mut labels: Vec<String> = field.labels().iter().map(u16::to_string).collect();
        labels[i] = field.num_classes().to_string();
        let d = field.dims();
        let text = format!("LMAP {} {} {}\n{}\n", d.rows(), d.cols(), field.num_classes(), labels.join(" "));
        let err = parse_lmap(&text).unwrap_err();
        // four header tokens precede the body
        prop_assert_eq!(err.token, 5 + i);
        prop_assert_eq!(err.line, 2);
    }
}
