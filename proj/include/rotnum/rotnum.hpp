#pragma once

#include "rotnum/error.hpp"
#include "rotnum/word.hpp"
#include "rotnum/dehn.hpp"
#include "rotnum/mat2.hpp"
#include "rotnum/circle.hpp"
#include "rotnum/fuchsian.hpp"
#include "rotnum/lift_context.hpp"
#include "rotnum/mapping_class.hpp"
#include "rotnum/sampling.hpp"
#include "rotnum/parallel.hpp"
#include "rotnum/cocycle.hpp"
#include "rotnum/winding.hpp"
#include "rotnum/verify.hpp"
