#pragma once

#include "icover/constructive.hpp"
#include "icover/cover.hpp"
#include "icover/error.hpp"
#include "icover/families.hpp"
#include "icover/harness.hpp"
#include "icover/lattice.hpp"
#include "icover/poset.hpp"
#include "icover/scd.hpp"
