#pragma once

#include "radlab/bounds.hpp"
#include "radlab/eig.hpp"
#include "radlab/errors.hpp"
#include "radlab/genlab.hpp"
#include "radlab/harness.hpp"
#include "radlab/io.hpp"
#include "radlab/lemmas.hpp"
#include "radlab/matcore.hpp"
#include "radlab/matrix.hpp"
#include "radlab/numrad.hpp"
#include "radlab/rng.hpp"
