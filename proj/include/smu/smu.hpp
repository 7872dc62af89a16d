#pragma once

// Smooth Maximum Unit activations, gradient checking, and a small MLP harness.

#include "smu/activation.hpp"
#include "smu/dataset.hpp"
#include "smu/erf.hpp"
#include "smu/errors.hpp"
#include "smu/experiment.hpp"
#include "smu/format.hpp"
#include "smu/gradcheck.hpp"
#include "smu/network.hpp"
#include "smu/optimizer.hpp"
#include "smu/random.hpp"
#include "smu/tensor.hpp"
#include "smu/train.hpp"
