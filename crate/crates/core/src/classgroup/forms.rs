//! Class numbers of quadratic fields by counting reduced binary quadratic
//! forms. Shares no code with the relation-lattice computation.

use num_integer::{Integer, Roots};

fn primitive(a: i64, b: i64, c: i64) -> bool {
    a.gcd(&b).gcd(&c) == 1
}

/// Number of reduced primitive positive definite forms of discriminant
/// `d < 0`, i.e. the class number of the imaginary quadratic order.
pub fn definite_class_number(d: i64) -> u64 {
    assert!(d < 0 && d.rem_euclid(4) <= 1, "not a negative discriminant");
    let mut h = 0;
    // reduced: |b| <= a <= c, so 3a^2 <= |d|
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if primitive(a, b, c) {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// Reduced indefinite forms of discriminant `d > 0`:
/// `0 < b < sqrt d` and `sqrt d - b < 2|a| < sqrt d + b`.
fn reduced_indefinite(d: i64) -> Vec<(i64, i64, i64)> {
    let s = d.sqrt();
    assert!(s * s != d, "square discriminant");
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let num = b * b - d;
        // 2|a| ranges strictly between sqrt(d) - b and sqrt(d) + b
        for abs_a in 1..=(s + b) / 2 + 1 {
            let t = 2 * abs_a;
            // sqrt d - b < t  <=>  d < (t + b)^2 ;  t < sqrt d + b  <=>  (t - b)^2 < d or t <= b
            let lower_ok = (t + b) * (t + b) > d;
            let upper_ok = t <= b || (t - b) * (t - b) < d;
            if !(lower_ok && upper_ok) {
                continue;
            }
            if num % (4 * abs_a) != 0 {
                continue;
            }
            for a in [abs_a, -abs_a] {
                let c = num / (4 * a);
                if primitive(a, b, c) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// One reduction step `(a, b, c) -> (c, b', (b'^2 - d) / 4c)` with
/// `b' = -b mod 2|c|` and `sqrt d - 2|c| < b' < sqrt d`.
fn rho(f: (i64, i64, i64), d: i64) -> (i64, i64, i64) {
    let (_, b, c) = f;
    let s = d.sqrt();
    let m = 2 * c.abs();
    let lo = s - m + 1;
    let bp = lo + (-b - lo).rem_euclid(m);
    (c, bp, (bp * bp - d) / (4 * c))
}

/// Class number (in the wide sense) of the real quadratic order of
/// discriminant `d > 0`: cycles of reduced forms up to `f -> -f`.
pub fn indefinite_class_number(d: i64) -> u64 {
    assert!(d > 0 && d.rem_euclid(4) <= 1, "not a positive discriminant");
    let forms = reduced_indefinite(d);
    let index = |f: &(i64, i64, i64)| forms.binary_search(f).expect("rho leaves the reduced set");
    let mut cycle = vec![usize::MAX; forms.len()];
    let mut cycles = 0;
    for start in 0..forms.len() {
        if cycle[start] != usize::MAX {
            continue;
        }
        let mut i = start;
        while cycle[i] == usize::MAX {
            cycle[i] = cycles;
            i = index(&rho(forms[i], d));
        }
        assert_eq!(cycle[i], cycles, "rho is not a permutation");
        cycles += 1;
    }
    // identify the cycle of (a,b,c) with that of (-a,b,-c)
    let mut parent: Vec<usize> = (0..cycles).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (i, &(a, b, c)) in forms.iter().enumerate() {
        let j = index(&(-a, b, -c));
        let (x, y) = (find(&mut parent, cycle[i]), find(&mut parent, cycle[j]));
        parent[x] = y;
    }
    (0..cycles).filter(|&x| find(&mut parent, x) == x).count() as u64
}

/// Narrow class number: cycles without the sign identification.
pub fn narrow_class_number(d: i64) -> u64 {
    let forms = reduced_indefinite(d);
    let mut seen = vec![false; forms.len()];
    let mut cycles = 0;
    for start in 0..forms.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = forms.binary_search(&rho(forms[i], d)).unwrap();
        }
    }
    cycles
}

/// Class number of the quadratic field of discriminant `d`.
pub fn quadratic_class_number(d: i64) -> u64 {
    if d < 0 {
        definite_class_number(d)
    } else {
        indefinite_class_number(d)
    }
}
