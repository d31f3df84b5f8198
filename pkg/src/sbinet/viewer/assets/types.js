/** Shapes of the bundle files the viewer consumes. */
export {};
