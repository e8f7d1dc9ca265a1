//! Cylinder functions against a 40-digit mpmath table
//! (`tests/data/gen_bessel_reference.py`).

use biharm::bessel;

struct Row {
    kind: char,
    order: usize,
    x: f64,
    value: f64,
}

fn table() -> Vec<Row> {
    let text = include_str!("data/bessel_reference.csv");
    text.lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            Row {
                kind: f[0].chars().next().unwrap(),
                order: f[1].parse().unwrap(),
                x: f[2].parse().unwrap(),
                value: f[3].parse().unwrap(),
            }
        })
        .collect()
}

/// Relative error against the magnitude envelope of the function family.
fn envelope(kind: char, x: f64, value: f64) -> f64 {
    match kind {
        'J' | 'Y' if x > 1.0 => value.abs().max((2.0 / (std::f64::consts::PI * x)).sqrt()),
        'J' | 'Y' => value.abs().max(1e-300),
        _ => value.abs(),
    }
}

#[test]
fn orders_zero_and_one_match_reference() {
    let mut worst = (0.0_f64, String::new());
    for row in table().iter().filter(|r| r.order <= 1) {
        let got = match (row.kind, row.order) {
            ('J', 0) => bessel::j0(row.x),
            ('J', 1) => bessel::j1(row.x),
            ('Y', 0) => bessel::y0(row.x),
            ('Y', 1) => bessel::y1(row.x),
            ('I', 0) => bessel::i01(row.x).0,
            ('I', 1) => bessel::i01(row.x).1,
            ('K', 0) => bessel::k01(row.x).0,
            ('K', 1) => bessel::k01(row.x).1,
            _ => unreachable!(),
        };
        if row.value == 0.0 {
            continue;
        }
        let err = (got - row.value).abs() / envelope(row.kind, row.x, row.value);
        if err > worst.0 {
            worst = (err, format!("{}{}({})", row.kind, row.order, row.x));
        }
    }
    println!("worst relative error {:.3e} at {}", worst.0, worst.1);
    assert!(worst.0 <= 1e-12, "worst {:.3e} at {}", worst.0, worst.1);
}

#[test]
fn integer_order_families_match_reference() {
    let rows = table();
    let mut worst = (0.0_f64, String::new());
    for &x in &[0.5, 1.0, 2.0, 4.0] {
        let js = bessel::bessel_j_seq(60, x);
        let ys = bessel::bessel_y_seq(60, x);
        let ks = bessel::bessel_k_seq(60, x);
        for row in rows.iter().filter(|r| r.x == x && r.order >= 2) {
            let got = match row.kind {
                'J' => js[row.order],
                'Y' => ys[row.order],
                'K' => ks[row.order],
                _ => continue,
            };
            let err = ((got - row.value) / row.value).abs();
            if err > worst.0 {
                worst = (err, format!("{}{}({})", row.kind, row.order, row.x));
            }
        }
    }
    println!("worst relative error {:.3e} at {}", worst.0, worst.1);
    assert!(worst.0 <= 1e-12, "worst {:.3e} at {}", worst.0, worst.1);
}
