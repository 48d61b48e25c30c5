use neg2adic::scalar_mul::StepKind;
use neg2adic::verify::{verify, Contender, VerifyConfig};
use neg2adic::{
    naf, neg_scalar_mul, neg_scalar_mul_online, scalar_mul_entry, width_w_naf,
    windowed_neg_scalar_mul, Algorithm, CostChargingGroup, CostProfile, CostVector, DigitForm,
    MixedMode, ModularGroup, MulOptions, MulResult, NegationAwareGroup, OpKind, SignedExpansion,
};
use num_bigint::{BigInt, BigUint};

fn zn(n: u64) -> ModularGroup {
    ModularGroup::new(n).unwrap()
}

// Intended multiple after a traced step: digits above `position`, plus the
// digit at `position` once it has been added in.
fn intended(e: &SignedExpansion, step: StepKind, position: usize) -> i64 {
    let top = e.length() - 1;
    let start = if step.completes_digit() {
        position
    } else {
        position + 1
    };
    let mut v: i64 = (start..=top)
        .rev()
        .fold(0, |acc, j| acc * 2 + i64::from(e.digit_at(j)));
    if !step.completes_digit() {
        v *= 2;
    }
    v
}

fn assert_invariant(e: &SignedExpansion, r: &MulResult<u64>, g: &ModularGroup, d: u64) {
    let n = g.modulus() as i64;
    for s in r.trace.as_ref().unwrap() {
        let intended = (intended(e, s.kind, s.position) * d as i64).rem_euclid(n) as u64;
        let actual = if s.flag == 1 {
            g.neg(&s.element)
        } else {
            s.element
        };
        assert_eq!(
            actual, intended,
            "{e} at {:?} position {}",
            s.kind, s.position
        );
    }
}

#[test]
fn universal_agreement() {
    for n in [5u64, 7, 11, 31, 97] {
        let g = zn(n);
        for d in 0..n {
            for m in 0..4 * n {
                let expected = (m * d) % n;
                let scalar = BigInt::from(m);
                for form in [DigitForm::Naf, DigitForm::Binary] {
                    for algo in Algorithm::SIGNED_BINARY {
                        let r =
                            scalar_mul_entry(&scalar, &d, &g, algo, form, MulOptions::default())
                                .unwrap();
                        assert_eq!(r.element, expected, "{algo} n={n} d={d} m={m}");
                    }
                }
                for width in [2, 3, 4, 5] {
                    for algo in [
                        Algorithm::Windowed { width },
                        Algorithm::WindowedDoubleAndAdd { width },
                    ] {
                        let r = scalar_mul_entry(
                            &scalar,
                            &d,
                            &g,
                            algo,
                            DigitForm::Naf,
                            MulOptions::default(),
                        )
                        .unwrap();
                        assert_eq!(r.element, expected, "{algo} n={n} d={d} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn negative_scalars() {
    let g = zn(97);
    for m in -200i64..0 {
        for algo in Algorithm::SIGNED_BINARY {
            let r = scalar_mul_entry(
                &BigInt::from(m),
                &3,
                &g,
                algo,
                DigitForm::Naf,
                MulOptions::default(),
            )
            .unwrap();
            assert_eq!(r.element, (3 * m).rem_euclid(97) as u64);
            assert!(r.table_ledger.count(OpKind::Neg) >= 1);
        }
    }
}

#[test]
fn loop_invariant_holds_for_every_variant() {
    let g = zn(8191);
    let d = 3;
    for m in 1u64..1 << 12 {
        let e = naf(&BigUint::from(m));
        let runs = [
            neg_scalar_mul(&e, &d, &g, MulOptions::traced()).unwrap(),
            neg_scalar_mul_online(&e, &d, &g, MulOptions::traced()).unwrap(),
            neg2adic::mixed_scalar_mul(
                &e,
                &d,
                &g,
                MixedMode::NegDoublingOnly,
                MulOptions::traced(),
            )
            .unwrap(),
            neg2adic::mixed_scalar_mul(
                &e,
                &d,
                &g,
                MixedMode::NegAdditionOnly,
                MulOptions::traced(),
            )
            .unwrap(),
        ];
        for r in &runs {
            assert_invariant(&e, r, &g, d);
            assert_eq!(r.element, (m * d) % 8191);
        }
        assert_eq!(runs[0].final_flag, 0);
        assert_eq!(runs[2].final_flag, 0);
        assert_eq!(runs[3].final_flag, 0);
        for w in [3, 4, 5] {
            let e = width_w_naf(&BigUint::from(m), w).unwrap();
            let r = windowed_neg_scalar_mul(&e, &d, &g, w, MulOptions::traced()).unwrap();
            assert_invariant(&e, &r, &g, d);
        }
    }
}

#[test]
fn parity_initialisation_and_sign_count() {
    let g = zn(8191);
    for m in 1u64..1 << 12 {
        let e = naf(&BigUint::from(m));
        let (l, w) = (e.length(), e.weight());
        let r = neg_scalar_mul(&e, &1, &g, MulOptions::traced()).unwrap();
        let trace = r.trace.unwrap();
        assert_eq!(trace[0].flag as usize, (l + w) % 2);
        let flips = trace.windows(2).filter(|p| p[0].flag != p[1].flag).count();
        assert_eq!(flips, l + w - 2);
        let ledger = r.ledger;
        assert_eq!(
            (ledger.count(OpKind::NegDbl) + ledger.count(OpKind::NegAdd)) as usize,
            l + w - 2
        );
    }
}

#[test]
fn operation_counts_match_baseline() {
    let g = zn(8191);
    for m in neg2adic::bench::sample_scalars(11, 256, 200) {
        let e = naf(&m);
        let (l, w) = (e.length() as u64, e.weight() as u64);
        let neg = neg_scalar_mul(&e, &1, &g, MulOptions::default())
            .unwrap()
            .total_ledger();
        let base = neg2adic::double_and_add(&e, &1, &g, MulOptions::default())
            .unwrap()
            .total_ledger();
        assert_eq!(
            (
                neg.count(OpKind::NegDbl),
                neg.count(OpKind::NegAdd),
                neg.count(OpKind::Neg)
            ),
            (l - 1, w - 1, 1)
        );
        assert_eq!((neg.count(OpKind::Dbl), neg.count(OpKind::Add)), (0, 0));
        assert_eq!(
            (base.count(OpKind::Dbl), base.count(OpKind::Add)),
            (l - 1, w - 1)
        );
        assert_eq!(
            (base.count(OpKind::NegDbl), base.count(OpKind::NegAdd)),
            (0, 0)
        );
    }
}

#[test]
fn picard_ledger_totals() {
    let p = CostProfile::picard();
    let g = CostChargingGroup::new(zn(8191), p.clone());
    for m in neg2adic::bench::sample_scalars(5, 160, 100) {
        let e = naf(&m);
        let (l, w) = (e.length() as u64, e.weight() as u64);
        let total = neg_scalar_mul(&e, &1, &g, MulOptions::default())
            .unwrap()
            .total_ledger()
            .total();
        let expected: CostVector = p.neg_dbl_cost * (l - 1) + p.neg_add_cost * (w - 1) + p.neg_cost;
        assert_eq!(total, expected);
    }
}

#[test]
fn online_final_negation_rate() {
    let g = zn(8191);
    let total = (1u64 << 16) - 1;
    let mut negated = 0u64;
    for m in 1u64..1 << 16 {
        let e = naf(&BigUint::from(m));
        let r = neg_scalar_mul_online(&e, &1, &g, MulOptions::default()).unwrap();
        assert_eq!(r.final_negation, (e.length() + e.weight()) % 2 == 1);
        negated += u64::from(r.final_negation);
    }
    let rate = negated as f64 / total as f64;
    assert!((0.47..=0.53).contains(&rate), "rate {rate}");
}

#[test]
fn width_two_window_equals_online() {
    let g = zn(8191);
    for m in 1u64..1 << 12 {
        let b = BigUint::from(m);
        let online = neg_scalar_mul_online(&naf(&b), &5, &g, MulOptions::default()).unwrap();
        let win = windowed_neg_scalar_mul(
            &width_w_naf(&b, 2).unwrap(),
            &5,
            &g,
            2,
            MulOptions::default(),
        )
        .unwrap();
        assert_eq!(win.element, online.element);
        assert_eq!(win.total_ledger(), online.total_ledger());
    }
}

// Algorithm 1 with the flag update after the negated addition left out.
fn corrupted_neg_scalar_mul(e: &SignedExpansion, d: u64, g: &ModularGroup) -> u64 {
    let neg_d = g.neg(&d);
    let mut f = ((e.length() + e.weight()) % 2) as u8;
    let mut acc = if f == 1 { neg_d } else { d };
    for &digit in &e.digits()[1..] {
        acc = g.neg_dbl(&acc);
        f ^= 1;
        if digit != 0 {
            let s = if f == 0 { digit } else { -digit };
            acc = g.neg_add(&acc, if s > 0 { &d } else { &neg_d });
        }
    }
    acc
}

#[test]
fn verify_catches_a_dropped_flag_update() {
    let bad = Contender::new("corrupted", |m, d, g| {
        let m = m.to_biguint().unwrap();
        if m == BigUint::from(0u8) {
            return Ok(0);
        }
        Ok(corrupted_neg_scalar_mul(&naf(&m), d, g))
    });
    let report = verify(
        VerifyConfig {
            max_n: 97,
            multiplier: 4,
        },
        &[bad],
    )
    .unwrap();
    assert!(!report.passed());
    let first = &report.mismatches[0];
    assert_ne!(Ok(first.expected), first.got);
    let g = zn(first.n);
    assert_eq!(first.expected, g.multiple(&BigUint::from(first.m), first.d));
}
