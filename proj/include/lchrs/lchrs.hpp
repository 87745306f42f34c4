#pragma once

#include "lchrs/error.hpp"
#include "lchrs/gf2m.hpp"
#include "lchrs/lch_transform.hpp"
#include "lchrs/rs_codec.hpp"
#include "lchrs/key_solvers.hpp"
#include "lchrs/decoder.hpp"
#include "lchrs/opcount_bench.hpp"
#include "lchrs/symbol_file.hpp"
