// pairing pipelines (implemented after the reduction engine)
