//! Acceptance criteria 1-11. Each criterion runs the library suite and,
//! where one exists, an independent oracle written here from first
//! principles. Prints one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use muord::padic::{PrecisionContext, UExpansion};
use muord::shimura::{Orbit, PelDatum};
use muord::suites::{self, SuiteConfig};
use muord::theta::theta_index;
use muord::weights::partition::{compositions, dominant_tuples};
use muord::weights::{
    char_congruent, dim_irrep, lr_coefficient, restrict_to_blocks, restrict_to_levi, DominantWeight,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<u64, String>;

// Orbit oracles.

fn slopes_by_count(n: u32, f: &[u32]) -> Vec<u32> {
    let mut s: Vec<u32> = (1..=n).map(|j| f.iter().filter(|&&x| x > n - j).count() as u32).collect();
    s.sort_unstable();
    s
}

/// Distinct values `n = F_0 > ... > F_{s+1} = 0` and the count of each.
fn levels(n: u32, f: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut values = vec![n];
    let mut mid: Vec<u32> = f.iter().copied().filter(|&x| 0 < x && x < n).collect();
    mid.sort_unstable_by(|a, b| b.cmp(a));
    mid.dedup();
    values.extend(mid);
    values.push(0);
    let counts = values.iter().map(|&v| f.iter().filter(|&&x| x == v).count() as u32).collect();
    (values, counts)
}

fn slopes_by_levels(n: u32, f: &[u32]) -> Vec<u32> {
    let (values, counts) = levels(n, f);
    let mut out = Vec::new();
    let mut slope = 0;
    for i in 0..values.len() - 1 {
        slope += counts[i];
        for _ in 0..values[i] - values[i + 1] {
            out.push(slope);
        }
    }
    out.sort_unstable();
    out
}

fn graded_sum(n: u32, f: &[u32]) -> u64 {
    let (values, counts) = levels(n, f);
    let s = values.len() - 1;
    let mult: Vec<u64> = (0..s).map(|i| (values[i] - values[i + 1]) as u64).collect();
    let slope: Vec<u64> = (0..s).map(|i| counts[..=i].iter().map(|&c| c as u64).sum()).collect();
    let mut total = 0;
    for i in 0..s {
        for j in 0..i {
            total += mult[i] * mult[j] * (slope[i] - slope[j]);
        }
    }
    total
}

fn expanded(o: &Orbit) -> Vec<u32> {
    let p = o.newton_slopes();
    p.slopes().zip(p.multiplicities()).flat_map(|(s, m)| std::iter::repeat_n(s, m as usize)).collect()
}

fn crit1(cfg: &SuiteConfig) -> Check {
    let r = suites::polygon_equivalence(cfg);
    lib(&r)?;
    for o in suites::all_orbits(cfg.max_e, cfg.max_n) {
        let (a, b) = (slopes_by_count(o.n(), o.mult_type()), slopes_by_levels(o.n(), o.mult_type()));
        if a != b || expanded(&o) != a {
            return Err(format!("n={} f={:?}: {a:?} vs {b:?}", o.n(), o.mult_type()));
        }
    }
    Ok(r.cases)
}

fn crit2(cfg: &SuiteConfig) -> Check {
    let r = suites::duality(cfg);
    lib(&r)?;
    for o in suites::all_orbits(cfg.max_e, cfg.max_n) {
        let e = o.e() as u32;
        let dual_f: Vec<u32> = o.mult_type().iter().map(|&x| o.n() - x).collect();
        let mut reflected: Vec<u32> = slopes_by_count(o.n(), o.mult_type()).iter().map(|&s| e - s).collect();
        reflected.sort_unstable();
        if slopes_by_count(o.n(), &dual_f) != reflected || expanded(&o.dual()) != reflected {
            return Err(format!("n={} f={:?}", o.n(), o.mult_type()));
        }
    }
    Ok(r.cases)
}

fn crit3(cfg: &SuiteConfig) -> Check {
    let r = suites::gr_rank_conservation(cfg);
    lib(&r)?;
    for o in suites::all_orbits(cfg.max_e, cfg.max_n) {
        let n = o.n();
        let direct: u64 = o.mult_type().iter().map(|&x| (x * (n - x)) as u64).sum();
        if graded_sum(n, o.mult_type()) != direct || o.gr_ranks().lower_sum() != direct {
            return Err(format!("n={n} f={:?}", o.mult_type()));
        }
    }
    Ok(r.cases)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn crit4(cfg: &SuiteConfig) -> Check {
    let r = suites::hasse_weight(cfg);
    lib(&r)?;
    for (p, es) in [(3u64, vec![1usize, 2, 3]), (5, vec![2, 4]), (7, vec![1, 3, 6]), (11, vec![2, 5])] {
        let lcm = es.iter().fold(1u128, |acc, &e| {
            let t = (p as u128).pow(e as u32) - 1;
            acc / gcd(acc, t) * t
        });
        let d = PelDatum::with_duals(p, es.iter().map(|&e| Orbit::new(2, vec![1; e], false).unwrap()))
            .map_err(|e| e.to_string())?;
        if d.hasse_weight().to_string() != lcm.to_string() {
            return Err(format!("p={p} e={es:?}: {} vs {lcm}", d.hasse_weight()));
        }
    }
    Ok(r.cases)
}

// Tableau oracles.

/// Weight multiset of semistandard tableaux of shape `lambda` with entries
/// in `1..=n`: the formal character of the `GL_n` irreducible.
fn ssyt_character(lambda: &[i64], n: usize) -> BTreeMap<Vec<i64>, u64> {
    fn fill(
        n: usize,
        cell: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        content: &mut Vec<i64>,
        out: &mut BTreeMap<Vec<i64>, u64>,
    ) {
        let Some(&(r, c)) = cells.get(cell) else {
            *out.entry(content.clone()).or_insert(0) += 1;
            return;
        };
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(grid[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(grid[r - 1][c] + 1);
        }
        for v in lo..=n {
            grid[r][c] = v;
            content[v - 1] += 1;
            fill(n, cell + 1, cells, grid, content, out);
            content[v - 1] -= 1;
        }
        grid[r][c] = 0;
    }
    let shift = lambda.iter().copied().min().unwrap_or(0).min(0);
    let shape: Vec<usize> = lambda.iter().map(|&x| (x - shift) as usize).collect();
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &l)| (0..l).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut out = BTreeMap::new();
    fill(n, 0, &cells, &mut grid, &mut vec![0; n], &mut out);
    out.into_iter().map(|(w, m)| (w.into_iter().map(|x| x + shift).collect(), m)).collect()
}

/// Restriction to `GL_{b_1} x ... x GL_{b_k}` by peeling highest weights off
/// the character.
fn peel(w: &[i64], blocks: &[usize]) -> BTreeMap<Vec<Vec<i64>>, u64> {
    let mut chi: BTreeMap<Vec<i64>, i64> =
        ssyt_character(w, w.len()).into_iter().map(|(k, v)| (k, v as i64)).collect();
    let mut out = BTreeMap::new();
    while let Some((top, &mult)) = chi.iter().next_back() {
        let top = top.clone();
        assert!(mult > 0, "negative multiplicity while peeling");
        let mut parts = Vec::new();
        let mut start = 0;
        for &b in blocks {
            parts.push(top[start..start + b].to_vec());
            start += b;
        }
        let mut product: BTreeMap<Vec<i64>, i64> = BTreeMap::from([(Vec::new(), 1)]);
        for (part, &b) in parts.iter().zip(blocks) {
            let local = ssyt_character(part, b);
            let mut next = BTreeMap::new();
            for (pre, c) in &product {
                for (suf, d) in &local {
                    let mut key = pre.clone();
                    key.extend(suf);
                    *next.entry(key).or_insert(0) += c * *d as i64;
                }
            }
            product = next;
        }
        for (k, c) in product {
            let e = chi.entry(k).or_insert(0);
            *e -= mult * c;
            assert!(*e >= 0, "character went negative while peeling");
        }
        chi.retain(|_, v| *v != 0);
        out.insert(parts, mult as u64);
    }
    out
}

fn crit5(cfg: &SuiteConfig) -> Check {
    let r = suites::branching_dimension(cfg);
    lib(&r)?;
    for n in 1..=cfg.max_n as usize {
        for w in dominant_tuples(n, 0, cfg.max_entry) {
            let count: u64 = ssyt_character(&w, n).values().sum();
            if dim_irrep(&w).map_err(|e| e.to_string())?.to_string() != count.to_string() {
                return Err(format!("dimension of {w:?}: tableau count {count}"));
            }
            for blocks in compositions(n) {
                if restrict_to_blocks(&w, &blocks).map_err(|e| e.to_string())? != peel(&w, &blocks) {
                    return Err(format!("{w:?} to {blocks:?} disagrees with character peeling"));
                }
            }
        }
    }
    Ok(r.cases)
}

fn crit6(cfg: &SuiteConfig) -> Check {
    let r = suites::multiplicity_witness(cfg);
    lib(&r)?;
    let peeled = peel(&[3, 2, 1, 0], &[2, 2]);
    let m = peeled.get(&vec![vec![2, 1], vec![2, 1]]).copied().unwrap_or(0);
    if m != 2 || lr_coefficient(&[3, 2, 1], &[2, 1], &[2, 1]) != 2 {
        return Err(format!("peeling gives {m}"));
    }
    Ok(r.cases + 1)
}

fn crit7(cfg: &SuiteConfig) -> Check {
    let r = suites::scalar_and_coprime(cfg);
    lib(&r)?;
    let d = PelDatum::with_duals(3, [Orbit::new(3, vec![1, 2], false).unwrap()]).unwrap();
    let per: Vec<Vec<Vec<i64>>> =
        (0..d.embeddings().len()).map(|i| dominant_tuples(d.a_plus(i) as usize, 0, 1)).collect();
    let mut weights = vec![Vec::new()];
    for options in &per {
        weights = weights
            .into_iter()
            .flat_map(|pre: Vec<Vec<i64>>| {
                options.iter().map(move |o| {
                    let mut w = pre.clone();
                    w.push(o.clone());
                    w
                })
            })
            .collect();
    }
    let decomposed: Vec<(i64, Vec<_>)> = weights
        .into_iter()
        .map(|w| {
            let k = DominantWeight::new(&d, w).unwrap();
            let m = restrict_to_levi(&k, &d).unwrap();
            (k.size(), m.components.into_keys().collect())
        })
        .collect();
    let mut pairs = 0;
    for (i, (s1, m1)) in decomposed.iter().enumerate() {
        for (s2, m2) in &decomposed[i + 1..] {
            if s1 != s2 {
                pairs += 1;
                if m1.iter().any(|x| m2.contains(x)) {
                    return Err("weights of different size share a Levi constituent".into());
                }
            }
        }
    }
    Ok(r.cases + pairs)
}

fn naive_pow(g: i128, e: u32, q: i128) -> i128 {
    (0..e).fold(1 % q, |acc, _| acc * g % q)
}

fn crit8(cfg: &SuiteConfig) -> Check {
    let r = suites::character_congruence(cfg);
    lib(&r)?;
    for (p, m) in [(3u64, 2u32), (5, 2), (3, 3), (3, 4)] {
        let q = (p as i128).pow(m);
        let units: Vec<i128> = (1..q).filter(|g| g % p as i128 != 0).collect();
        let inverse = |g: i128| (1..q).find(|h| g * h % q == 1).unwrap();
        let power = |g: i128, e: i64| {
            if e >= 0 { naive_pow(g, e as u32, q) } else { naive_pow(inverse(g), (-e) as u32, q) }
        };
        for a in -10..=10i64 {
            for b in -10..=10i64 {
                let truth = units.iter().all(|&g| power(g, a) == power(g, b));
                if char_congruent(&[a], &[b], m, p).map_err(|e| e.to_string())? != truth {
                    return Err(format!("p^m = {p}^{m}, exponents {a}, {b}"));
                }
            }
        }
    }
    Ok(r.cases)
}

fn crit9(cfg: &SuiteConfig) -> Check {
    for (p, m) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let q = (p as i128).pow(m + 1);
        for (k, kp) in suites::valid_scalar_pairs(p, m, (p * p * (p - 1)) as i64) {
            if (0..q).any(|a| naive_pow(a, k as u32, q) != naive_pow(a, kp as u32, q)) {
                return Err(format!("eigenvalues a^{k} and a^{kp} differ mod {p}^{}", m + 1));
            }
        }
    }
    let r = suites::theta_congruence(cfg);
    lib(&r)?;
    Ok(r.cases)
}

fn crit10(cfg: &SuiteConfig) -> Check {
    let r = suites::measures_and_kummer(cfg);
    lib(&r)?;
    Ok(r.cases)
}

/// `(1 + u_c) d/du_c` on a dense integer representation, reduced at the end.
fn naive_theta(f: &UExpansion, c: usize) -> HashMap<Vec<u32>, i128> {
    let mut out: HashMap<Vec<u32>, i128> = HashMap::new();
    for (e, x) in f.terms() {
        let n = e[c] as i128;
        if n == 0 {
            continue;
        }
        let mut lower = e.to_vec();
        lower[c] -= 1;
        *out.entry(lower).or_insert(0) += n * x as i128;
        *out.entry(e.to_vec()).or_insert(0) += n * x as i128;
    }
    let q = f.ctx().modulus() as i128;
    out.into_iter().map(|(k, v)| (k, v.rem_euclid(q))).filter(|(_, v)| *v != 0).collect()
}

fn crit11(cfg: &SuiteConfig) -> Check {
    let r = suites::operator_identities(cfg);
    lib(&r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..200 {
        let arity = rng.gen_range(1..=3);
        let ctx = Arc::new(
            PrecisionContext::new(5, 3, cfg.degree, (0..arity).map(|c| format!("u{c}"))).unwrap(),
        );
        let all: Vec<usize> = (0..arity).collect();
        let f = suites::random_series(&mut rng, &ctx, 10, cfg.degree, &all);
        let c = rng.gen_range(0..arity);
        let lib_terms: HashMap<Vec<u32>, i128> =
            theta_index(&f, c).terms().map(|(e, x)| (e.to_vec(), x as i128)).collect();
        if lib_terms != naive_theta(&f, c) {
            return Err(format!("case {i}: theta differs from direct differentiation"));
        }
    }
    Ok(r.cases + 200)
}

fn lib(r: &suites::SuiteReport) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{} of {} cases failed; first: {}", r.failures, r.cases, r.examples.join(" | ")))
    }
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let criteria: [fn(&SuiteConfig) -> Check; 11] =
        [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10, crit11];
    let mut failed = 0;
    let mut total = Duration::ZERO;
    for (i, run) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&cfg);
        let took = start.elapsed();
        total += took;
        let name = suites::NAMES[i];
        match outcome {
            Ok(cases) => println!("criterion {:>2} {name:<36} PASS  {cases:>7} cases  {took:>10.2?}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name:<36} FAIL  {why}  {took:.2?}", i + 1);
            }
        }
    }
    println!("{} of 11 criteria passed in {total:.2?}", 11 - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
