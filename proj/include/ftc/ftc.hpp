#pragma once

#include "ftc/ancestry.hpp"
#include "ftc/bits.hpp"
#include "ftc/errors.hpp"
#include "ftc/gf2e.hpp"
#include "ftc/graph.hpp"
#include "ftc/rs_outdetect.hpp"
#include "ftc/scheme.hpp"
#include "ftc/sparsify.hpp"
#include "ftc/store.hpp"
#include "ftc/union_find.hpp"
