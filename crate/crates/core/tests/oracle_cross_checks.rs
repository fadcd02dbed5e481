//! Partition sums and chains against the brute-force oracle, bypassing the closed forms.

use affine_derangements::cyclesums::{self, Mode, OrthVariant, QMod4};
use affine_derangements::exactalg::{rat, BigRational};
use affine_derangements::formulas::{self, eval_q, Family};
use affine_derangements::grouporacle::{build_group, delta_oracle, unipotent_count, BuildOptions};
use affine_derangements::series::{build_t, SeriesFamily};

fn oracle(f: Family, m: usize, q: u64, p_power: bool) -> BigRational {
    delta_oracle(&build_group(f, m, q, BuildOptions::default()).unwrap(), p_power)
}

fn q_mod_4(q: u64) -> QMod4 {
    if q % 4 == 1 {
        QMod4::One
    } else {
        QMod4::Three
    }
}

#[test]
fn unitary_partition_sum_matches_oracle() {
    for (m, q) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)] {
        let sum = eval_q(&cyclesums::u_unitary_lhs(m).unwrap(), q).unwrap();
        assert_eq!(sum, oracle(Family::Au, m, q, true), "m={m} q={q}");
    }
}

#[test]
fn symplectic_partition_sum_matches_oracle() {
    for (m, q) in [(1, 3), (1, 5), (1, 7), (2, 3)] {
        let sum = eval_q(&cyclesums::sum_sympl_lhs(m, Mode::Reduced).unwrap(), q).unwrap();
        assert_eq!(sum, oracle(Family::Asp, m, q, true), "m={m} q={q}");
    }
}

#[test]
fn orthogonal_partition_sums_match_oracle() {
    for (m, q) in [(1, 3), (1, 5), (2, 3)] {
        let c = q_mod_4(q);
        let sum = eval_q(&cyclesums::sum_orth_lhs(2 * m, OrthVariant::Sum, Mode::Reduced, c).unwrap(), q).unwrap();
        let diff = eval_q(&cyclesums::sum_orth_lhs(2 * m, OrthVariant::Diff, Mode::Reduced, c).unwrap(), q).unwrap();
        let (plus, minus) = (oracle(Family::AoPlus, m, q, true), oracle(Family::AoMinus, m, q, true));
        assert_eq!(&plus + &minus, sum, "m={m} q={q}");
        assert_eq!(&plus - &minus, diff, "m={m} q={q}");
    }
    for q in [3, 5] {
        let sum = eval_q(&cyclesums::sum_orth_lhs(3, OrthVariant::Sum, Mode::Reduced, q_mod_4(q)).unwrap(), q).unwrap();
        assert_eq!(sum * rat(1, 2), oracle(Family::AoOdd, 1, q, true), "q={q}");
    }
}

#[test]
fn signed_sums_match_oracle_in_both_residue_classes() {
    for q in [3u64, 5] {
        let c = q_mod_4(q);
        let diff = eval_q(&cyclesums::sum_orth_lhs(2, OrthVariant::Diff, Mode::Signed, c).unwrap(), q).unwrap();
        assert_eq!(diff, oracle(Family::AoPlus, 1, q, true) - oracle(Family::AoMinus, 1, q, true), "q={q}");
    }
}

#[test]
fn agl_p_power_proportion_matches_oracle() {
    for (m, q) in [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2)] {
        let (f, conj) = formulas::delta_p(Family::Agl, m).unwrap();
        assert!(!conj);
        assert_eq!(eval_q(&f, q).unwrap(), oracle(Family::Agl, m, q, true), "m={m} q={q}");
    }
}

#[test]
fn steinberg_series_counts_unipotents() {
    let t_sp = build_t(SeriesFamily::Sp, 5);
    let t_u = build_t(SeriesFamily::U, 4);
    for (f, m, q, coeff) in [
        (Family::Asp, 1, 3, t_sp.coefficient(2).unwrap().clone()),
        (Family::Asp, 2, 3, t_sp.coefficient(4).unwrap().clone()),
        (Family::Au, 2, 3, t_u.coefficient(2).unwrap().clone()),
        (Family::Au, 3, 2, t_u.coefficient(3).unwrap().clone()),
    ] {
        let g = build_group(f, m, q, BuildOptions::default()).unwrap();
        let proportion = BigRational::new(unipotent_count(&g).into(), g.len().into());
        assert_eq!(proportion, eval_q(&coeff, q).unwrap(), "{f} m={m} q={q}");
    }
}
