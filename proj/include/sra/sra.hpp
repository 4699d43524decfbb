#pragma once

#include "sra/algebra.hpp"
#include "sra/axioms.hpp"
#include "sra/card_value.hpp"
#include "sra/cardinality.hpp"
#include "sra/element_props.hpp"
#include "sra/errors.hpp"
#include "sra/io.hpp"
#include "sra/model_spec.hpp"
#include "sra/parallel.hpp"
#include "sra/report.hpp"
#include "sra/representation.hpp"
#include "sra/search.hpp"
#include "sra/symbolic.hpp"
#include "sra/zoo.hpp"
