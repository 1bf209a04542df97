// Copyright 2026 The stored-light Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Closed-form counting statistics against the truncated Fock-space engine.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stored_light::*;

fn random_unitary(rng: &mut StdRng) -> TransferMatrix {
    let g = Complex64::cis(rng.gen_range(-PI..PI));
    let (a, b) = (
        Complex64::cis(rng.gen_range(-PI..PI)),
        Complex64::cis(rng.gen_range(-PI..PI)),
    );
    // Haar measure on the mixing angle: cos²θ uniform
    let ct = rng.gen_range(0.0..1.0f64).sqrt();
    let st = (1.0 - ct * ct).sqrt();
    TransferMatrix::from_elements([
        [g * a * ct, g * b * st],
        [-g * b.conj() * st, g * a.conj() * ct],
    ])
    .unwrap()
}

fn random_stage_matrix(rng: &mut StdRng) -> TransferMatrix {
    let mut stage = || {
        StageAngles::new(
            rng.gen_range(0.0..FRAC_PI_2),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
        )
        .unwrap()
    };
    let (a, b) = (stage(), stage());
    build_transfer_matrix(&a, &b)
}

#[test]
fn distribution_matches_oracle_at_unit_overlap() {
    let mut rng = StdRng::seed_from_u64(11);
    let basis = ModeBasis::new(GramMatrix::identical(), 8).unwrap();
    for trial in 0..10 {
        let s = if trial % 2 == 0 {
            random_unitary(&mut rng)
        } else {
            random_stage_matrix(&mut rng)
        };
        let op = released_number_operator(&s, &basis, Channel::First);
        for n in 0..=4 {
            for m in 0..=4 {
                let closed =
                    release_distribution_s1(&FockInput::identical(n, m).unwrap(), &s).unwrap();
                let state = build_fock_input(n as usize, m as usize, &basis).unwrap();
                let oracle = oracle_distribution(&state, &op).unwrap();
                assert_eq!(closed.probs().len(), oracle.probs().len());
                for (a, b) in closed.probs().iter().zip(oracle.probs()) {
                    assert!((a - b).abs() < 1e-10, "n={n} m={m}: {a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn phased_unit_overlap_matches_oracle() {
    let mut rng = StdRng::seed_from_u64(12);
    let overlap = GramMatrix::from_polar(1.0, 2.2).unwrap();
    let basis = ModeBasis::new(overlap, 6).unwrap();
    let s = random_unitary(&mut rng);
    let op = released_number_operator(&s, &basis, Channel::First);
    for (n, m) in [(1, 1), (2, 3), (3, 3)] {
        let closed = release_distribution_s1(&FockInput::new(n, m, overlap).unwrap(), &s).unwrap();
        let oracle = oracle_distribution(
            &build_fock_input(n as usize, m as usize, &basis).unwrap(),
            &op,
        )
        .unwrap();
        for (a, b) in closed.probs().iter().zip(oracle.probs()) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn moments_match_oracle_at_any_overlap() {
    let mut rng = StdRng::seed_from_u64(13);
    for &modulus in &[0.0, 0.3, 0.7, 1.0] {
        let overlap = GramMatrix::from_polar(modulus, rng.gen_range(-PI..PI)).unwrap();
        let basis = ModeBasis::new(overlap, 8).unwrap();
        for _ in 0..3 {
            let s = random_unitary(&mut rng);
            let ops =
                [Channel::First, Channel::Second].map(|c| released_number_operator(&s, &basis, c));
            for n in 0..=4u32 {
                for m in 0..=4u32 {
                    let input = FockInput::new(n, m, overlap).unwrap();
                    let state = build_fock_input(n as usize, m as usize, &basis).unwrap();
                    let (mean, var) = oracle_moments(&state, &ops[0]).unwrap();
                    assert!((mean - mean_release_count(&input, &s, Channel::First)).abs() < 1e-9);
                    assert!(
                        (var - release_variance(&input, &s)).abs() < 1e-9,
                        "|s|={modulus} n={n} m={m}"
                    );
                    let (mean2, var2) = oracle_moments(&state, &ops[1]).unwrap();
                    assert!((mean2 - mean_release_count(&input, &s, Channel::Second)).abs() < 1e-9);
                    assert!((var2 - var).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn partial_overlap_distribution_reproduces_closed_moments() {
    let overlap = GramMatrix::from_polar(0.5, 0.0).unwrap();
    let basis = ModeBasis::new(overlap, 4).unwrap();
    let s = magnetic_phase_matrix(1.0).unwrap();
    let input = FockInput::new(2, 2, overlap).unwrap();
    let p = oracle_distribution(
        &build_fock_input(2, 2, &basis).unwrap(),
        &released_number_operator(&s, &basis, Channel::First),
    )
    .unwrap();
    assert!((p.mean() - mean_release_count(&input, &s, Channel::First)).abs() < 1e-9);
    assert!((p.variance() - release_variance(&input, &s)).abs() < 1e-9);
}

#[test]
fn channel_number_operators_sum_to_total() {
    let mut rng = StdRng::seed_from_u64(14);
    for &modulus in &[0.0, 0.45, 0.9, 1.0] {
        let basis = ModeBasis::new(GramMatrix::from_polar(modulus, 0.8).unwrap(), 4).unwrap();
        let s = random_unitary(&mut rng);
        let h1 = released_number_operator(&s, &basis, Channel::First)
            .single_particle()
            .clone();
        let h2 = released_number_operator(&s, &basis, Channel::Second)
            .single_particle()
            .clone();
        let id = DMatrix::<Complex64>::identity(basis.mode_count(), basis.mode_count());
        assert!((h1.clone() + h2 - id).iter().all(|z| z.norm() < 1e-12));
        // each channel counts an orthonormal set of packet modes
        assert!((&h1 * &h1 - &h1).iter().all(|z| z.norm() < 1e-12));
        let trace: Complex64 = h1.trace();
        assert!((trace.re - basis.packet_modes() as f64).abs() < 1e-12);
    }
}

#[test]
fn number_operator_blocks_are_hermitian_with_integer_spectrum() {
    let mut rng = StdRng::seed_from_u64(15);
    for &modulus in &[0.0, 0.6] {
        let basis = ModeBasis::new(GramMatrix::from_polar(modulus, -0.4).unwrap(), 4).unwrap();
        let op = released_number_operator(&random_unitary(&mut rng), &basis, Channel::First);
        for total in 0..=4 {
            let block = op.block(total);
            assert!((block.adjoint() - &block).iter().all(|z| z.norm() < 1e-12));
            let eig = SymmetricEigen::new(block);
            for &v in eig.eigenvalues.iter() {
                assert!((v - v.round()).abs() < 1e-8 && v > -1e-8 && v < total as f64 + 1e-8);
            }
        }
    }
}

#[test]
fn commutators_reproduce_gram_matrix() {
    let overlap = GramMatrix::new(Complex64::new(0.35, -0.5)).unwrap();
    let basis = ModeBasis::new(overlap, 5).unwrap();
    let total = 2;
    for j in 0..2 {
        for k in 0..2 {
            for p in 0..2 {
                for q in 0..2 {
                    let x = basis.storage_mode(j, p);
                    let y = basis.storage_mode(k, q);
                    // [X, Y†] on the `total` sector
                    let x_up = basis.annihilation_block(&x, total + 1);
                    let y_up = basis.annihilation_block(&y, total + 1).adjoint();
                    let x_here = basis.annihilation_block(&x, total);
                    let y_down = basis.annihilation_block(&y, total).adjoint();
                    let comm = x_up * y_up - y_down * x_here;
                    let expected = if j == k {
                        overlap.get(p, q)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    let dim = comm.nrows();
                    for r in 0..dim {
                        for c in 0..dim {
                            let target = if r == c {
                                expected
                            } else {
                                Complex64::new(0.0, 0.0)
                            };
                            assert!((comm[(r, c)] - target).norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn stored_states_are_normalized_and_conserve_photons() {
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..20 {
        let modulus = rng.gen_range(0.0..0.999);
        let basis = ModeBasis::new(
            GramMatrix::from_polar(modulus, rng.gen_range(-PI..PI)).unwrap(),
            6,
        )
        .unwrap();
        let (n, m) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let state = build_fock_input(n, m, &basis).unwrap();
        assert!((state.norm() - 1.0).abs() < 1e-10);
        assert_eq!(state.total_photons(), n + m);
        let p = oracle_distribution(
            &state,
            &released_number_operator(&random_unitary(&mut rng), &basis, Channel::First),
        )
        .unwrap();
        assert_eq!(p.probs().len(), n + m + 1);
    }
}

#[test]
fn single_packet_mode_at_unit_overlap() {
    let basis = ModeBasis::new(GramMatrix::identical(), 4).unwrap();
    let state = build_fock_input(2, 1, &basis).unwrap();
    assert_eq!(basis.mode_count(), 2);
    // (a₁†)² a₂† |0⟩ / √2 → amplitude 1 on |2, 1⟩
    assert!((state.amplitude(&[2, 1, 0, 0]) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
}
