#pragma once

#include "cnull/error.hpp"
#include "cnull/field.hpp"
#include "cnull/poly.hpp"
#include "cnull/parse.hpp"
#include "cnull/multiset.hpp"
#include "cnull/ideal.hpp"
#include "cnull/divided_differences.hpp"
#include "cnull/certificates.hpp"
#include "cnull/covering.hpp"
#include "cnull/additive.hpp"
#include "cnull/value_set.hpp"
#include "cnull/io.hpp"
