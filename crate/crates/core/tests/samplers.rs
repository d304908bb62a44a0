use potts_core::{
    gibbs_sweep, global_agreement, simulate_potts, GridDims, LabelField, Neighborhood, PottsRng, SamplerConfig,
    SwendsenWang,
};

/// Agreeing pairs counted straight from coordinates.
fn agreeing_pairs(rows: usize, cols: usize, labels: &[u16], diagonal: bool) -> u32 {
    let mut u = 0;
    for r in 0..rows {
        for c in 0..cols {
            let mut partners = vec![(r, c + 1), (r + 1, c)];
            if diagonal {
                partners.push((r + 1, c + 1));
                if c > 0 {
                    partners.push((r + 1, c - 1));
                }
            }
            for (r2, c2) in partners {
                if r2 < rows && c2 < cols && labels[r * cols + c] == labels[r2 * cols + c2] {
                    u += 1;
                }
            }
        }
    }
    u
}

fn state_index(labels: &[u16], num_classes: usize) -> usize {
    labels.iter().rev().fold(0, |acc, &l| acc * num_classes + l as usize)
}

fn exact_distribution(rows: usize, cols: usize, num_classes: usize, beta: f64, diagonal: bool) -> Vec<f64> {
    let n = rows * cols;
    let states = num_classes.pow(n as u32);
    let mut weights: Vec<f64> = (0..states)
        .map(|mut code| {
            let labels: Vec<u16> = (0..n)
                .map(|_| {
                    let l = (code % num_classes) as u16;
                    code /= num_classes;
                    l
                })
                .collect();
            (beta * agreeing_pairs(rows, cols, &labels, diagonal) as f64).exp()
        })
        .collect();
    let z: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= z);
    weights
}

fn total_variation(hits: &[u64], exact: &[f64]) -> f64 {
    let n: u64 = hits.iter().sum();
    0.5 * hits.iter().zip(exact).map(|(&h, &p)| (h as f64 / n as f64 - p).abs()).sum::<f64>()
}

#[test]
fn three_label_first_order_chains_hit_exact_law() {
    let (rows, cols, l, beta) = (2, 2, 3, 0.8);
    let exact = exact_distribution(rows, cols, l, beta, false);
    let dims = GridDims::new(rows, cols).unwrap();
    let samples = 200_000;

    let mut rng = PottsRng::seed_from_u64(21);
    let mut field = LabelField::uniform(dims, l, 0).unwrap();
    let mut sw = SwendsenWang::new();
    let mut hits = vec![0u64; exact.len()];
    for _ in 0..samples {
        sw.sweep(&mut field, beta, Neighborhood::First, &mut rng).unwrap();
        hits[state_index(field.labels(), l)] += 1;
    }
    let tv = total_variation(&hits, &exact);
    assert!(tv < 0.02, "swendsen-wang tv {tv}");

    let mut field = LabelField::uniform(dims, l, 0).unwrap();
    let mut hits = vec![0u64; exact.len()];
    for _ in 0..samples {
        gibbs_sweep(&mut field, beta, Neighborhood::First, &mut rng).unwrap();
        hits[state_index(field.labels(), l)] += 1;
    }
    let tv = total_variation(&hits, &exact);
    assert!(tv < 0.02, "gibbs tv {tv}");
}

#[test]
fn cluster_and_gibbs_chains_agree_on_mean_agreement() {
    let dims = GridDims::new(128, 128).unwrap();
    let nbhd = Neighborhood::Second;
    let beta = 0.3;
    let pairs = (127 * 128 * 2 + 2 * 127 * 127) as f64;
    let reps = 30;

    let sw: Vec<f64> = (0..reps)
        .map(|i| {
            let cfg = SamplerConfig::new(beta, 1000 + i).with_sweeps(200);
            global_agreement(&simulate_potts(dims, 2, nbhd, &cfg).unwrap(), nbhd) as f64 / pairs
        })
        .collect();
    let gibbs: Vec<f64> = (0..reps)
        .map(|i| {
            let mut rng = PottsRng::seed_from_u64(5000 + i);
            let mut field = potts_core::uniform_field(dims, 2, &mut rng).unwrap();
            for _ in 0..200 {
                gibbs_sweep(&mut field, beta, nbhd, &mut rng).unwrap();
            }
            global_agreement(&field, nbhd) as f64 / pairs
        })
        .collect();

    let mean_var = |v: &[f64]| {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64;
        (m, var)
    };
    let (m1, v1) = mean_var(&sw);
    let (m2, v2) = mean_var(&gibbs);
    let se = (v1 / reps as f64 + v2 / reps as f64).sqrt();
    assert!((m1 - m2).abs() <= 3.0 * se, "sw {m1} gibbs {m2} se {se}");
    // well above the independent-label value of 1/2
    assert!(m1 > 0.6);
}
