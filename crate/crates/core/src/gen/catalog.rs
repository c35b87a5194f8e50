use super::{Component, CountRule, Layout, ModelSpec};

fn gaussians(means: &[&[f64]], std: &[&[f64]]) -> Layout {
    Layout::Components(
        means
            .iter()
            .zip(std)
            .map(|(m, s)| Component::Gaussian {
                mean: m.to_vec(),
                std: s.to_vec(),
            })
            .collect(),
    )
}

fn unit_gaussians(means: &[&[f64]]) -> Layout {
    let p = means[0].len();
    let ones = vec![1.0; p];
    let stds: Vec<&[f64]> = means.iter().map(|_| ones.as_slice()).collect();
    gaussians(means, &stds)
}

fn random_centers(center_var: f64) -> Layout {
    Layout::RandomCenters {
        center_var,
        min_center_distance: 1.0,
    }
}

/// Two noisy diagonal segments, the second shifted by `offset` in every
/// coordinate.
fn lines(p: usize, offset: f64) -> Layout {
    let seg = |shift: f64| Component::Line {
        lo: -0.5,
        hi: 0.5,
        noise: 0.1,
        sign: vec![1.0; p],
        shift: vec![shift; p],
    };
    Layout::Components(vec![seg(0.0), seg(offset)])
}

fn brod(n: usize, k: usize, informative: usize, uninformative: usize) -> (CountRule, Layout) {
    let counts = if n == 0 {
        CountRule::Range { lo: 50, hi: 100 }
    } else {
        CountRule::Fixed(vec![n / k; k])
    };
    let layout = Layout::Brodinova {
        informative,
        uninformative,
        min_point_distance: 3.0,
    };
    (counts, layout)
}

fn spec(id: &str, p: usize, k: usize, counts: CountRule, layout: Layout) -> ModelSpec {
    ModelSpec {
        id: id.to_string(),
        p,
        k,
        counts,
        layout,
    }
}

/// The 26 built-in models: gap2-5, wgap1-6, brod1-12 and mixed1-4.
pub fn model_catalog() -> Vec<ModelSpec> {
    let mut out = vec![
        spec(
            "gap2",
            2,
            3,
            CountRule::Fixed(vec![25, 25, 50]),
            unit_gaussians(&[&[0.0, 0.0], &[0.0, 5.0], &[5.0, -3.0]]),
        ),
        spec("gap3", 3, 4, CountRule::OneOf(vec![25, 50]), random_centers(5.0)),
        spec("gap4", 10, 2, CountRule::OneOf(vec![25, 50]), random_centers(1.9)),
        spec("gap5", 3, 2, CountRule::Fixed(vec![100, 100]), lines(3, 10.0)),
        spec(
            "wgap1",
            2,
            6,
            CountRule::Range { lo: 25, hi: 50 },
            unit_gaussians(&[
                &[10.0, 0.0],
                &[6.0, 0.0],
                &[0.0, 0.0],
                &[-5.0, 0.0],
                &[5.0, 5.0],
                &[0.0, -6.0],
            ]),
        ),
        spec(
            "wgap2",
            2,
            2,
            CountRule::Fixed(vec![100, 15]),
            unit_gaussians(&[&[0.0, 0.0], &[5.0, 0.0]]),
        ),
        spec(
            "wgap3",
            2,
            4,
            CountRule::Fixed(vec![50; 4]),
            Layout::Components(
                [[0.0, 0.0], [3.0, 0.0], [0.0, 3.0], [3.0, 3.0]]
                    .iter()
                    .map(|o| Component::TruncatedExp {
                        lo: -1.0,
                        hi: 1.0,
                        offset: o.to_vec(),
                    })
                    .collect(),
            ),
        ),
        spec("wgap4", 2, 2, CountRule::Fixed(vec![100, 100]), lines(2, -1.0)),
        spec("wgap5", 10, 2, CountRule::Range { lo: 25, hi: 50 }, random_centers(3.6)),
        spec(
            "wgap6",
            2,
            6,
            CountRule::Fixed(vec![50; 6]),
            unit_gaussians(&[
                &[0.0, 0.0],
                &[-1.0, 5.0],
                &[10.0, -10.0],
                &[15.0, -10.0],
                &[10.0, -15.0],
                &[25.0, 25.0],
            ]),
        ),
    ];

    // n = 0 marks the 50-100 points per cluster rule
    let brods = [
        (120, 20, 0, 3),
        (400, 20, 0, 10),
        (120, 15, 5, 3),
        (400, 15, 5, 10),
        (120, 10, 10, 3),
        (400, 10, 10, 10),
        (120, 1000, 0, 3),
        (400, 1000, 0, 10),
        (400, 1500, 0, 10),
        (1250, 1500, 0, 50),
        (0, 1000, 0, 3),
        (0, 1000, 0, 10),
    ];
    for (i, &(n, inf, unf, k)) in brods.iter().enumerate() {
        let (counts, layout) = brod(n, k, inf, unf);
        out.push(spec(&format!("brod{}", i + 1), inf + unf, k, counts, layout));
    }

    let line = |shift: [f64; 3], sign: [f64; 3]| Component::Line {
        lo: -1.0,
        hi: 1.0,
        noise: 0.3,
        sign: sign.to_vec(),
        shift: shift.to_vec(),
    };
    let g = |mean: [f64; 3], std: [f64; 3]| Component::Gaussian {
        mean: mean.to_vec(),
        std: std.to_vec(),
    };
    let exp = |lo: f64, hi: f64| Component::TruncatedExp {
        lo,
        hi,
        offset: vec![0.0; 3],
    };
    out.push(spec(
        "mixed1",
        3,
        3,
        CountRule::Fixed(vec![80, 100, 100]),
        Layout::Components(vec![
            g([0.0; 3], [0.1; 3]),
            line([0.0, 2.0, 0.0], [1.0; 3]),
            line([0.0, -2.0, 0.0], [-1.0, 1.0, 1.0]),
        ]),
    ));
    out.push(spec(
        "mixed2",
        3,
        4,
        CountRule::Fixed(vec![80, 100, 80, 100]),
        Layout::Components(vec![
            exp(-1.0, 1.0),
            exp(2.0, 3.0),
            g([0.5, 2.5, 2.5], [0.1; 3]),
            g([2.5, 0.5, 0.5], [0.2; 3]),
        ]),
    ));
    out.push(spec(
        "mixed3",
        3,
        4,
        CountRule::Fixed(vec![80, 100, 120, 140]),
        Layout::Components(vec![
            g([0.0; 3], [0.1; 3]),
            g([2.0, 0.0, 0.0], [0.2; 3]),
            g([0.0, 2.0, 0.0], [0.3; 3]),
            g([0.0, 0.0, 2.0], [0.4; 3]),
        ]),
    ));
    out.push(spec(
        "mixed4",
        3,
        4,
        CountRule::Fixed(vec![80, 100, 120, 140]),
        Layout::Components(vec![
            g([0.0; 3], [0.1, 0.1, 0.2]),
            g([2.0, 0.0, 0.0], [0.1, 0.2, 0.3]),
            g([0.0, 2.0, 0.0], [0.2, 0.4, 0.6]),
            g([0.0, 0.0, 2.0], [1.0, 0.1, 0.1]),
        ]),
    ));
    out
}

/// Catalog entry by id. Case, spaces, dashes and underscores are ignored,
/// so "gap 2" and "WGAP-5" both resolve.
pub fn lookup(id: &str) -> Option<ModelSpec> {
    let key: String = id
        .chars()
        .filter(|c| !matches!(c, ' ' | '-' | '_'))
        .collect::<String>()
        .to_ascii_lowercase();
    model_catalog().into_iter().find(|s| s.id == key)
}
