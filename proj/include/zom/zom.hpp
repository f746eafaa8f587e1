#pragma once

#include "zom/behrend.hpp"
#include "zom/classifier.hpp"
#include "zom/constructions.hpp"
#include "zom/containment.hpp"
#include "zom/errors.hpp"
#include "zom/extremal.hpp"
#include "zom/marking.hpp"
#include "zom/matrix.hpp"
#include "zom/pattern.hpp"
#include "zom/registry.hpp"
#include "zom/tensor.hpp"
