#pragma once

#include "natext/error.hpp"
#include "natext/words.hpp"
#include "natext/snf.hpp"
#include "natext/affine.hpp"
#include "natext/britton.hpp"
#include "natext/finite_group.hpp"
#include "natext/group.hpp"
#include "natext/cayley.hpp"
#include "natext/csp.hpp"
#include "natext/subshift.hpp"
#include "natext/extension.hpp"
#include "natext/reversibility.hpp"
#include "natext/dynamics.hpp"
#include "natext/io.hpp"
#include "natext/registry.hpp"
