#pragma once

#include "stabdec/circuit.hpp"
#include "stabdec/cli.hpp"
#include "stabdec/code.hpp"
#include "stabdec/decoder.hpp"
#include "stabdec/encoder.hpp"
#include "stabdec/errors.hpp"
#include "stabdec/gf2.hpp"
#include "stabdec/pauli.hpp"
#include "stabdec/search.hpp"
#include "stabdec/statevector.hpp"
