# Arabic food-hazard event extraction package
