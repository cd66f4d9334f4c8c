// SPDX-License-Identifier: MIT OR Apache-2.0

mod common;

use common::props;

#[test]
fn dual_composes_to_degree() {
    props::dual_composes_to_degree().unwrap();
}

#[test]
fn quaternion_endos_satisfy_min_poly() {
    props::quaternion_endos_satisfy_min_poly().unwrap();
}

#[test]
fn chains_and_labels() {
    props::chains_and_labels().unwrap();
}

#[test]
fn ascent_divides_disc_by_four() {
    props::ascent_divides_disc_by_four().unwrap();
}

#[test]
fn ell_fundamental_part_cases() {
    props::ell_fundamental_part_cases().unwrap();
}

#[test]
fn cornacchia_against_exhaustive_search() {
    props::cornacchia_against_exhaustive_search().unwrap();
}

#[test]
fn class_numbers_against_form_count() {
    props::class_numbers_against_form_count().unwrap();
}
